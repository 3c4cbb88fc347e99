from django.core.management.base import CommandError

from ...builder import FINITE, build
from ...classify import sample_parameter
from ...errors import CapExceeded
from ...reports import build_report, sdim_json
from ..base import ForgeCommand


class Command(ForgeCommand):
    help = "Build g(A) from a Cartan matrix and report its superdimension and structure"

    def add_command_arguments(self, parser):
        parser.add_argument("--audit", action="store_true", help="Include every basis element with its defining bracket word")
        parser.add_argument("--no-structure", action="store_true", help="Skip derived series, center and highest weights")
        parser.add_argument("--sample-degree", type=int, default=None,
                            help="For a parametric matrix, also build at every a in GF(p^k) for this k")

    def run(self, **options):
        spec = self.load_spec(options)
        b = build(spec, self.caps(options))
        report = build_report(b, structure=not options["no_structure"], audit=options["audit"])
        if options["sample_degree"]:
            sampled = sample_parameter(spec, options["sample_degree"], b.caps)
            report["sampling"] = {
                "degree": options["sample_degree"],
                "special": [
                    {"value": value, "sdim": sdim if isinstance(sdim, str) else sdim_json(sdim)}
                    for value, sdim in sorted(sampled["special"].items())
                ],
            }
        self.emit(report, options)
        if b.verdict != FINITE:
            exc = CapExceeded(f"{spec} exceeded the caps at sdim {b.sdim()}")
            raise CommandError(str(exc), returncode=exc.code)
