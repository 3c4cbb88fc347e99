from pathlib import Path

from django.core.management.base import CommandError

from ...expectations import verify_tables
from ...pdf import build_tables_report
from ..base import ForgeCommand


class Command(ForgeCommand):
    help = "Replay the expectation tables and report pass/fail per entry"

    takes_spec = False

    def add_command_arguments(self, parser):
        parser.add_argument("--family", default=None)
        parser.add_argument("--p", type=int, default=None)
        parser.add_argument("--skip-slow", action="store_true")
        parser.add_argument("--expectations", default=None, help="Alternative expectation file")
        parser.add_argument("--pdf", default=None, help="Also render the report as a PDF table")

    def run(self, **options):
        caps = self.caps(options)
        results = verify_tables(options["family"], options["p"], not options["skip_slow"], caps, options["expectations"])
        self.emit({"results": [r.to_json() for r in results]}, options)
        if options["pdf"]:
            Path(options["pdf"]).write_bytes(build_tables_report(results, caps))
        failed = [r.family for r in results if not r.passed]
        if failed:
            raise CommandError(f"{len(failed)} of {len(results)} entries failed: {', '.join(failed)}", returncode=1)
        self.stderr.write(self.style.SUCCESS(f"{len(results)} entries pass"))
