from ...classical import FAMILIES, adjoin_I0, build_classical, central_extend, derived_algebra
from ...errors import InvalidParams
from ...reports import presentation_report
from ..base import ForgeCommand


def _params(text: str) -> dict:
    params = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        key, sep, value = item.partition("=")
        if not sep:
            raise InvalidParams(f"bad parameter {item!r}; expected key=value")
        params[key.strip()] = value.strip()
    return params


class Command(ForgeCommand):
    help = "Build a classical matrix Lie superalgebra and its derived, extended and enlarged relatives"

    takes_spec = False

    def add_command_arguments(self, parser):
        parser.add_argument("family", choices=FAMILIES)
        parser.add_argument("--p", type=int, required=True)
        parser.add_argument("--params", default="", help="e.g. m=2,n=1 or a=4,b=2")
        parser.add_argument("--derived", type=int, default=0, help="Take this many derived algebras first")
        parser.add_argument("--central-extension", action="store_true")
        parser.add_argument("--adjoin-i0", action="store_true", help="Adjoin I_0 after the central extension")

    def run(self, **options):
        x = build_classical(options["family"], _params(options["params"]), options["p"])
        if options["derived"]:
            x = derived_algebra(x, options["derived"])
        if options["central_extension"] or options["adjoin_i0"]:
            x = central_extend(x)
        if options["adjoin_i0"]:
            x = adjoin_I0(x)
        self.emit(presentation_report(x, getattr(x, "name", options["family"])), options)
