from ...builder import FINITE, build
from ...dynkin import diagram_symmetries, fixed_subalgebra
from ...errors import CapExceeded, InvalidParams
from ...reports import presentation_report, sdim_json
from ..base import ForgeCommand


def _permutation(text: str) -> tuple:
    try:
        return tuple(int(x) - 1 for x in text.split(","))
    except ValueError as exc:
        raise InvalidParams(f"bad permutation {text!r}; expected e.g. 5,4,3,2,1") from exc


class Command(ForgeCommand):
    help = "Fixed points of g(A) under the automorphisms induced by diagram symmetries"

    def add_command_arguments(self, parser):
        parser.add_argument("--sigma", default=None, help="1-based node permutation, e.g. 5,4,3,2,1; default: every symmetry")
        parser.add_argument("--compare", action="store_true", help="Also build g(N) for the folded matrix N")

    def run(self, **options):
        spec = self.load_spec(options)
        b = build(spec, self.caps(options))
        if b.verdict != FINITE:
            raise CapExceeded(f"{spec} exceeded the caps at sdim {b.sdim()}")
        sigmas = [_permutation(options["sigma"])] if options["sigma"] else diagram_symmetries(spec)
        results = []
        for sigma in sigmas:
            fixed = fixed_subalgebra(b, sigma)
            entry = {"sigma": [s + 1 for s in sigma], "order": fixed.order}
            entry.update(presentation_report(fixed.algebra))
            entry["invariants"] = sdim_json(fixed.invariants.sdim())
            entry["folded"] = fixed.folded.to_json()
            if options["compare"]:
                folded = fixed.folded_sdim(self.caps(options))
                entry["folded_sdim"] = sdim_json(folded) if folded else None
            results.append(entry)
        self.emit({"spec": spec.to_json(), "fixed": results}, options)
