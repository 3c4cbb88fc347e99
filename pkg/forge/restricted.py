"""p-powers on finite algebras: p|2p-structures and the p = 2 variants."""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field as dc_field

from . import linalg, presentation
from .cartan import Mark
from .conf import engine_settings

logger = logging.getLogger(__name__)

TWO_FOUR = "(2,4)"
TWO_FOUR_TWO = "(2,4|2)"
NONE = "none"


def ad_power(algebra: presentation.Presentation, x: dict, k: int) -> dict:
    """(ad_x)^k on every basis element."""
    out = {}
    for y in algebra.basis:
        v = algebra.unit(y)
        for _ in range(k):
            v = algebra.bracket(x, v)
            if not v:
                break
        out[y] = v
    return out


def _flatten(images: dict) -> dict:
    return {(y, z): c for y, v in images.items() for z, c in v.items()}


def _candidates(algebra: presentation.Presentation, x: dict, k: int) -> list:
    grades = {algebra.grade_of(y) for y in x}
    even = [y for y in algebra.basis if algebra.parity_of(y) == 0]
    if len(grades) != 1:
        return even
    target = tuple(k * c for c in grades.pop())
    return [y for y in even if algebra.grade_of(y) == target]


def inner_power(algebra: presentation.Presentation, x: dict, k: int) -> dict | None:
    """An even y with ad_y = (ad_x)^k, or None when (ad_x)^k is not inner.

    Solutions differ by central elements; the one returned comes from
    the first independent candidates in basis order.
    """
    f = algebra.field
    target = _flatten(ad_power(algebra, x, k))
    if not target:
        return {}
    ech = linalg.Echelon(f)
    for w in _candidates(algebra, x, k):
        column = _flatten({y: algebra.bracket_basis(w, y) for y in algebra.basis})
        if column:
            ech.add(column, w)
    return ech.express(target)


def p_power(algebra: presentation.Presentation, x: dict) -> dict | None:
    return inner_power(algebra, x, algebra.p)


def default_grading(algebra) -> tuple[callable, bool]:
    """The +/- grading and whether it is a guess.

    With od nodes the grading is the parity of their total coefficient,
    as for o^(1)(2n+1) seen inside the superalgebra with those nodes odd.
    Without them the first root coordinate is used, flagged as heuristic.
    """
    spec = getattr(algebra, "spec", None)
    if spec is not None:
        od = tuple(1 if m is Mark.OD else 0 for m in spec.marks)
        if any(od):
            return root_grading(algebra, od), False
    return root_grading(algebra, (1,)), True


def root_grading(algebra, weights) -> callable:
    """y -> sum of weights[i] * (root coordinate i of y), mod 2."""
    weights = tuple(weights)
    return lambda y: sum(w * c for w, c in zip(weights, algebra.grade_of(y))) % 2


def adjoint(algebra: presentation.Presentation, y: dict) -> dict:
    return {z: algebra.bracket(y, algebra.unit(z)) for z in algebra.basis}


def acts_as_power(algebra: presentation.Presentation, y: dict, x: dict, k: int) -> bool:
    """ad_y = (ad_x)^k on the whole basis."""
    return _flatten(adjoint(algebra, y)) == _flatten(ad_power(algebra, x, k))


def jacobson_sum(algebra: presentation.Presentation, x: dict, y: dict) -> dict:
    """sum of s_i(x, y) where i*s_i is the t^(i-1) coefficient of ad(tx + y)^(p-1)(x)."""
    f = algebra.field
    p = algebra.p
    terms = [dict(x)]
    for _ in range(p - 1):
        nxt = [{} for _ in range(len(terms) + 1)]
        for k, v in enumerate(terms):
            linalg.axpy(f, nxt[k], f.one, algebra.bracket(y, v))
            linalg.axpy(f, nxt[k + 1], f.one, algebra.bracket(x, v))
        terms = nxt
    out: dict = {}
    for i in range(1, p):
        linalg.axpy(f, out, f.inv(f.from_int(i)), terms[i - 1])
    return out


def check_conditions(algebra: presentation.Presentation, powers: dict, odd_powers: dict,
                     pairs: int | None = None, seed: int = 0) -> tuple[list, int]:
    """Witnesses against the p|2p-structure axioms, and the number of pairs tried.

    Checked: ad of every recorded power, the p-th power rule for a
    scalar multiple, the sum rule (x + y)^[p] = x^[p] + y^[p] + s(x, y)
    on basis pairs, and at p = 2 the odd powers (x^2)^[2].
    """
    f = algebra.field
    p = algebra.p
    pairs = engine_settings().structure_pairs if pairs is None else pairs
    witnesses = []
    for x, y in powers.items():
        if not acts_as_power(algebra, y, algebra.unit(x), p):
            witnesses.append((x, f"ad of the recorded power differs from (ad x)^{p}"))
    for x, y in odd_powers.items():
        if not acts_as_power(algebra, y, algebra.unit(x), 2 * p):
            witnesses.append((x, f"ad of (x^2)^[{p}] differs from (ad x)^{2 * p}"))
    if p > 2 and powers:
        c = f.from_int(2)
        cent = presentation.center(algebra)
        for x, y in powers.items():
            scaled = linalg.scale(f, c, algebra.unit(x))
            z = p_power(algebra, scaled)
            if z is None or not equal_mod_center(algebra, linalg.scale(f, f.pow(c, p), y), z, cent):
                witnesses.append((x, "(cx)^[p] != c^p x^[p] modulo the center"))
    keys = sorted(powers)
    candidates = list(itertools.combinations(keys, 2))
    if len(candidates) > pairs:
        candidates = random.Random(seed).sample(candidates, pairs)
    for x, y in candidates:
        u, v = algebra.unit(x), algebra.unit(y)
        total = linalg.combine(f, ((f.one, powers[x]), (f.one, powers[y]), (f.one, jacobson_sum(algebra, u, v))))
        if not acts_as_power(algebra, total, linalg.add(f, u, v), p):
            witnesses.append((x, f"sum rule fails with {y}"))
    return witnesses, len(candidates)


@dataclass
class PStructureReport:
    restricted: bool
    variant: str
    p_powers: dict = dc_field(default_factory=dict)
    odd_powers: dict = dc_field(default_factory=dict)
    four_powers: dict = dc_field(default_factory=dict)
    witnesses: list = dc_field(default_factory=list)
    two_two: bool = False
    heuristic_grading: bool = False
    pairs_checked: int = 0

    def to_json(self, field) -> dict:
        def vec(v):
            return [[x, field.to_text(c)] for x, c in sorted(v.items())]

        return {
            "restricted": self.restricted,
            "variant": self.variant,
            "p_powers": [{"x": x, "power": vec(v)} for x, v in sorted(self.p_powers.items())],
            "odd_powers": [{"x": x, "power": vec(v)} for x, v in sorted(self.odd_powers.items())],
            "four_powers": [{"x": x, "power": vec(v)} for x, v in sorted(self.four_powers.items())],
            "witnesses": [{"x": x, "reason": reason} for x, reason in self.witnesses],
            "two_two": self.two_two,
            "heuristic_grading": self.heuristic_grading,
            "pairs_checked": self.pairs_checked,
        }


def verify_structure(algebra: presentation.Presentation, grading=None, pairs: int | None = None) -> PStructureReport:
    """Look for p-powers on an even basis, check the axioms and classify the structure found.

    ``grading`` is a callable basis id -> 0 (plus) / 1 (minus) or a tuple of
    node weights for ``root_grading``; it only matters at p = 2.
    """
    p = algebra.p
    even = [x for x in algebra.basis if algebra.parity_of(x) == 0]
    odd = [x for x in algebra.basis if algebra.parity_of(x) == 1]
    powers, witnesses = {}, []
    for x in even:
        y = p_power(algebra, algebra.unit(x))
        if y is None:
            witnesses.append((x, f"(ad x)^{p} is not inner"))
        else:
            powers[x] = y
    odd_powers = {}
    if p == 2:
        for x in odd:
            square = algebra.square(algebra.unit(x))
            if not square:
                odd_powers[x] = {}
                continue
            y = p_power(algebra, square)
            if y is None:
                witnesses.append((x, "the square of an odd vector has no 2-power"))
            else:
                odd_powers[x] = y
    if not witnesses:
        failures, checked = check_conditions(algebra, powers, odd_powers, pairs)
        if failures:
            logger.error("p-powers found but %d axiom checks failed", len(failures))
            return PStructureReport(False, NONE, powers, odd_powers, witnesses=failures, pairs_checked=checked)
        variant = f"{p}|{2 * p}"
        logger.info("%s|%s-structure found on an algebra of sdim %s|%s", p, 2 * p, *algebra.sdim())
        return PStructureReport(True, variant, powers, odd_powers, witnesses=[], two_two=p == 2 and bool(odd),
                                pairs_checked=checked)
    if p != 2:
        return PStructureReport(False, NONE, powers, odd_powers, witnesses=witnesses)
    heuristic = False
    if grading is None:
        grading, heuristic = default_grading(algebra)
        if heuristic:
            logger.warning("no 2-structure; trying (2,4) with the heuristic first-coordinate grading")
    elif not callable(grading):
        grading = root_grading(algebra, grading)
    four, four_witnesses = {}, []
    for x in even:
        if grading(x) == 0:
            if x not in powers:
                four_witnesses.append((x, "no 2-power on the plus part"))
            continue
        y = inner_power(algebra, algebra.unit(x), 4)
        if y is None or any(grading(z) for z in y):
            four_witnesses.append((x, "(ad x)^4 is not inner in the plus part"))
        else:
            four[x] = y
    if four_witnesses:
        return PStructureReport(False, NONE, powers, odd_powers, {}, witnesses + four_witnesses,
                                heuristic_grading=heuristic)
    plus = {x: y for x, y in powers.items() if grading(x) == 0}
    failures, checked = check_conditions(algebra, plus, odd_powers, pairs)
    for x, y in four.items():
        if not acts_as_power(algebra, y, algebra.unit(x), 4):
            failures.append((x, "ad of the recorded 4-power differs from (ad x)^4"))
    if failures:
        return PStructureReport(False, NONE, powers, odd_powers, four, witnesses + failures,
                                heuristic_grading=heuristic, pairs_checked=checked)
    variant = TWO_FOUR_TWO if odd else TWO_FOUR
    return PStructureReport(False, variant, powers, odd_powers, four, witnesses, heuristic_grading=heuristic,
                            pairs_checked=checked)


def equal_mod_center(algebra: presentation.Presentation, u: dict, v: dict, center=None) -> bool:
    center = center if center is not None else presentation.center(algebra)
    diff = linalg.sub(algebra.field, u, v)
    return not diff or center.contains(diff)


def derivation_power_check(algebra: presentation.Presentation, x: dict) -> bool:
    """(ad_x)^(2p) = (ad_{x^2})^p for an odd x at p = 2."""
    p = algebra.p
    return ad_power(algebra, x, 2 * p) == ad_power(algebra, algebra.square(x), p)
