from ...builder import FINITE, build
from ...errors import CapExceeded, InvalidParams
from ...restricted import verify_structure
from ..base import ForgeCommand


def _weights(text: str | None, n: int) -> tuple | None:
    if text is None:
        return None
    try:
        weights = tuple(int(x) % 2 for x in text.split(","))
    except ValueError as exc:
        raise InvalidParams(f"bad grading {text!r}; expected e.g. 1,0,0") from exc
    if len(weights) != n:
        raise InvalidParams(f"grading needs {n} weights, got {len(weights)}")
    return weights


class Command(ForgeCommand):
    help = "Look for a p|2p-structure (or a (2,4)-variant at p = 2) on g(A)"

    def add_command_arguments(self, parser):
        parser.add_argument("--grading", default=None, help="Node weights of the +/- grading at p = 2, e.g. 1,0,0")
        parser.add_argument("--pairs", type=int, default=None, help="Basis pairs on which the sum rule is checked")

    def run(self, **options):
        spec = self.load_spec(options)
        b = build(spec, self.caps(options))
        if b.verdict != FINITE:
            raise CapExceeded(f"{spec} exceeded the caps at sdim {b.sdim()}")
        report = verify_structure(b, _weights(options["grading"], spec.n), options["pairs"])
        payload = report.to_json(b.field)
        for key in ("p_powers", "odd_powers", "four_powers"):
            for item in payload[key]:
                item["x"] = b.name(item["x"])
                item["power"] = [[b.name(y), c] for y, c in item["power"]]
        for item in payload["witnesses"]:
            item["x"] = b.name(item["x"])
        self.emit(payload, options)
