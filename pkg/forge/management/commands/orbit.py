from pathlib import Path

from ...builder import FINITE, build
from ...errors import CapExceeded
from ...pdf import build_orbit_report
from ...reflections import enumerate_orbit
from ..base import ForgeCommand


class Command(ForgeCommand):
    help = "Enumerate every Cartan matrix reachable by reflections"

    def add_command_arguments(self, parser):
        parser.add_argument("--orbit-cap", type=int, default=None)
        parser.add_argument("--no-verify", action="store_true", help="Do not rebuild members to compare superdimensions")
        parser.add_argument("--pdf", default=None, help="Also render the rectangle table to this PDF file")

    def run(self, **options):
        spec = self.load_spec(options)
        caps = self.caps(options)
        b = build(spec, caps)
        if b.verdict != FINITE:
            raise CapExceeded(f"{spec} exceeded the caps at sdim {b.sdim()}")
        verify = False if options["no_verify"] else None
        orbit = enumerate_orbit(spec, caps, options["orbit_cap"], verify_sdim=verify, prebuilt=b)
        payload = orbit.to_json()
        payload["rectangle"] = orbit.rectangle()
        payload["ordered_rectangle"] = orbit.ordered_rectangle()
        if options["pdf"]:
            Path(options["pdf"]).write_bytes(build_orbit_report(orbit, f"Reflection orbit of {spec}"))
        self.emit(payload, options)
