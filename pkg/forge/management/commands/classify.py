from ...cartan import parse_parity
from ...classify import ENLARGE, EXHAUSTIVE, SearchConfig, classify_run
from ..base import ForgeCommand


class Command(ForgeCommand):
    help = "Search all Cartan matrices of a size over GF(p) for finite dimensional g(A)"

    takes_spec = False

    def add_command_arguments(self, parser):
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument("--p", type=int, required=True)
        parser.add_argument("--mode", choices=(EXHAUSTIVE, ENLARGE), default=EXHAUSTIVE)
        parser.add_argument("--parities", nargs="*", default=None, help="Parity patterns such as 100 or 'od ev ev'")
        parser.add_argument("--parametric", action="store_true", help="Add a and a+1 to the entry pool")
        parser.add_argument("--submatrix-filter", action="store_true")
        parser.add_argument("--threads", type=int, default=None)

    def run(self, **options):
        parities = None
        if options["parities"]:
            parities = tuple(parse_parity(p.split() if " " in p else p) for p in options["parities"])
        cfg = SearchConfig(
            n=options["n"],
            p=options["p"],
            parities=parities,
            parametric=options["parametric"],
            caps=self.caps(options),
            use_submatrix_filter=options["submatrix_filter"],
            mode=options["mode"],
            threads=options["threads"],
        )
        report = classify_run(cfg)
        self.emit(report.to_json(), options)
        self.stderr.write(f"{len(report.survivors)} orbits, {len(report.capped)} capped")
