"""Contragredient Lie superalgebras g(A, I) grown height by height.

Positive root vectors are created as left-normed brackets [e_i, u] and,
at p = 2, as squares of odd vectors of half height. A candidate is
identified with its image under ad f_1, ..., ad f_n: candidates with
equal images are equal in g(A), and those with zero image belong to the
maximal ideal and vanish. The negative part is the image of the
positive part under the Chevalley involution w(e_i) = f_i,
w(f_i) = (-1)^{p_i} e_i, w(h) = -h.

Basis ids: Cartan elements h_1..h_n, d_1..d_l are 0..n+l-1, positive
root vectors are numbered from n+l on, and the negative partner of a
positive id x is -x.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field as dc_field

from . import linalg, presentation
from .cartan import CartanSpec, corank, grading_completion, left_kernel
from .conf import engine_settings
from .errors import InternalInconsistency, NotOdd, WrongCharacteristic

logger = logging.getLogger(__name__)

FINITE = "finite"
EXCEEDED_CAP = "exceeded_cap"


@dataclass(frozen=True)
class Caps:
    dim_cap: int = 2048
    height_cap: int = 64

    @classmethod
    def default(cls) -> "Caps":
        conf = engine_settings()
        return cls(conf.dim_cap, conf.height_cap)


@dataclass(frozen=True)
class BasisElement:
    id: int
    root: tuple
    kind: str
    parity: int
    word: str


@dataclass
class SimpleCore:
    derived: list
    center: presentation.Subspace
    algebra: presentation.Induced
    drop_matches: bool = dc_field(default=True)

    @property
    def sdim(self) -> tuple[int, int]:
        return self.algebra.sdim()


class AlgebraBuild(presentation.Presentation):
    def __init__(self, spec: CartanSpec, caps: Caps | None = None):
        self.spec = spec
        self.field = spec.field
        self.caps = caps or Caps.default()
        f = self.field
        self.n = spec.n
        self.T = left_kernel(spec)
        self.B = grading_completion(spec)
        self.l = len(self.B)
        self.ncartan = self.n + self.l
        self._minus = f.neg(f.one)
        self.root: dict[int, tuple] = {}
        self.height: dict[int, int] = {}
        self.defn: dict[int, tuple] = {}
        self.fimg: dict[int, dict] = {}
        self.etable: dict[tuple, dict] = {}
        self.sqtable: dict[int, dict] = {}
        self.heights: list[list[int]] = [[]]
        self._weights: dict[tuple, tuple] = {}
        self._memo: dict[tuple, dict] = {}
        self._next = self.ncartan
        self.verdict = FINITE
        self._grow()
        positives = [x for level in self.heights for x in level]
        self.positives = positives
        self.basis = list(range(self.ncartan)) + positives + [-x for x in positives]
        limit = engine_settings().check_max_dim
        if self.verdict == FINITE and 0 < self.dim <= limit:
            self.check_invariants()
        logger.info("built %s: sdim %s|%s, verdict %s", spec, *self.sdim(), self.verdict)

    # ids and weights

    def e(self, i: int) -> int:
        return self.ncartan + i

    def f(self, i: int) -> int:
        return -(self.ncartan + i)

    def h(self, i: int) -> int:
        return i

    def d(self, r: int) -> int:
        return self.n + r

    def kind(self, x: int) -> str:
        if x < 0:
            return "negative"
        if x < self.n:
            return "cartan_h"
        if x < self.ncartan:
            return "cartan_d"
        return "positive"

    def is_cartan(self, x: int) -> bool:
        return 0 <= x < self.ncartan

    def grade_of(self, x) -> tuple:
        if x < 0:
            return tuple(-c for c in self.root[-x])
        if x < self.ncartan:
            return (0,) * self.n
        return self.root[x]

    def parity_of(self, x) -> int:
        if 0 <= x < self.ncartan:
            return 0
        return sum(c * q for c, q in zip(self.grade_of(x), self.spec.parity)) % 2

    def weight(self, root: tuple) -> tuple:
        """Eigenvalues of h_1..h_n, d_1..d_l on the root space of root."""
        if root not in self._weights:
            f = self.field
            rows = self.spec.rows() + self.B
            self._weights[root] = tuple(
                linalg.combine(f, ((f.from_int(c), {0: row[k]}) for k, c in enumerate(root) if c)).get(0, f.zero)
                for row in rows
            )
        return self._weights[root]

    def _sign(self, parity_product: int):
        return self._minus if parity_product % 2 else self.field.one

    # growth

    def _new(self, root: tuple, defn: tuple, fimg: dict) -> int:
        x = self._next
        self._next += 1
        self.root[x] = root
        self.height[x] = sum(root)
        self.defn[x] = defn
        self.fimg[x] = fimg
        return x

    def _grow(self):
        f = self.field
        spec = self.spec
        n = self.n
        level = []
        for i in range(n):
            unit = tuple(1 if k == i else 0 for k in range(n))
            x = self._new(unit, ("gen", i), {i: {self.h(i): f.neg(self._sign(spec.parity[i]))}})
            level.append(x)
        self.heights.append(level)
        m = 2
        while True:
            if m > self.caps.height_cap:
                self.verdict = EXCEEDED_CAP
                logger.warning("height cap %d reached for %s", self.caps.height_cap, spec)
                break
            groups: dict[tuple, list] = {}
            for u in self.heights[m - 1]:
                for i in range(n):
                    root = tuple(c + (k == i) for k, c in enumerate(self.root[u]))
                    groups.setdefault(root, []).append(("br", i, u))
            if self.p == 2 and m % 2 == 0:
                for b in self.heights[m // 2]:
                    if self.parity_of(b) == 1:
                        groups.setdefault(tuple(2 * c for c in self.root[b]), []).append(("sq", b))
            level = []
            for root, candidates in groups.items():
                ech = linalg.Echelon(f)
                for cand in candidates:
                    image = self._candidate_image(cand)
                    if not image:
                        value = {}
                    else:
                        value = ech.express(image)
                        if value is None:
                            split: dict = {}
                            for (j, y), c in image.items():
                                split.setdefault(j, {})[y] = c
                            x = self._new(root, cand, split)
                            ech.add(image, x)
                            level.append(x)
                            value = {x: f.one}
                    if cand[0] == "br":
                        self.etable[(cand[1], cand[2])] = value
                    else:
                        self.sqtable[cand[1]] = value
            logger.debug("height %d: %d new root vectors", m, len(level))
            if not level:
                break
            self.heights.append(level)
            if self.ncartan + 2 * (self._next - self.ncartan) > self.caps.dim_cap:
                self.verdict = EXCEEDED_CAP
                logger.warning("dimension cap %d exceeded for %s", self.caps.dim_cap, spec)
                break
            m += 1
        if self.verdict == FINITE:
            self._check_late_squares(m)

    def _candidate_image(self, cand: tuple) -> dict:
        f = self.field
        parity = self.spec.parity
        image: dict = {}
        for j in range(self.n):
            if cand[0] == "br":
                _, i, u = cand
                v: dict = {}
                if i == j:
                    lam = self.weight(self.root[u])[i]
                    linalg.axpy(f, v, f.neg(f.mul(self._sign(parity[i]), lam)), {u: f.one})
                w = self.fimg[u].get(j)
                if w:
                    linalg.axpy(f, v, self._sign(parity[i] * parity[j]), self.bracket({self.e(i): f.one}, w))
            else:
                b = cand[1]
                w = self.fimg[b].get(j)
                v = self.bracket({b: f.one}, w) if w else {}
            for y, c in v.items():
                image[(j, y)] = c
        return image

    def _check_late_squares(self, stop: int):
        if self.p != 2:
            return
        for level in self.heights[1:]:
            for b in level:
                if self.parity_of(b) == 1 and 2 * self.height[b] >= stop and b not in self.sqtable:
                    if self._candidate_image(("sq", b)):
                        raise InternalInconsistency(f"square of x{b} survives beyond the top height")
                    self.sqtable[b] = {}

    def check_invariants(self):
        """Recheck the finished algebra; the first violation raises InternalInconsistency.

        The derivations of the algebra form a subalgebra, so Jacobi only needs
        its first argument among the generators and the Cartan part.
        """
        violations = presentation.check_grading(self)
        gens = list(range(self.ncartan)) + [g for i in range(self.n) for g in (self.e(i), self.f(i))]
        triples = (
            (g, y, z) for g in gens for y, z in itertools.combinations_with_replacement(self.basis, 2)
        )
        violations += presentation.check_jacobi(self, triples)
        violations += self._null_vectors()
        if violations:
            logger.error("%s: %d violations, first %s", self.spec, len(violations), violations[0])
            raise InternalInconsistency(f"{self.spec}: built algebra fails {violations[0][0]}")
        logger.debug("checked %s: %d elements", self.spec, self.dim)

    def _null_vectors(self) -> list[tuple]:
        out = []
        for x in self.positives:
            if self.height[x] < 2:
                continue
            if not any(self.bracket_basis(x, self.f(j)) for j in range(self.n)):
                out.append(("null vector", x))
            if not any(self.bracket_basis(-x, self.e(j)) for j in range(self.n)):
                out.append(("null vector", -x))
        return out

    # brackets

    def omega(self, v: dict) -> dict:
        f = self.field
        out = {}
        for x, c in v.items():
            if x < 0:
                out[-x] = f.mul(self._sign(self.parity_of(-x)), c)
            elif x < self.ncartan:
                out[x] = f.neg(c)
            else:
                out[-x] = c
        return out

    def bracket_basis(self, x, y) -> dict:
        key = (x, y)
        memo = self._memo
        if key in memo:
            return memo[key]
        if (y, x) in memo:
            sign = self.field.neg(self._sign(self.parity_of(x) * self.parity_of(y)))
            result = linalg.scale(self.field, sign, memo[(y, x)])
        else:
            result = self._compute(x, y)
        memo[key] = result
        return result

    def _flip(self, x, y) -> dict:
        sign = self.field.neg(self._sign(self.parity_of(x) * self.parity_of(y)))
        return linalg.scale(self.field, sign, self.bracket_basis(y, x))

    def _compute(self, x, y) -> dict:
        f = self.field
        cx, cy = self.is_cartan(x), self.is_cartan(y)
        if cx and cy:
            return {}
        if cx:
            w = self.weight(self.grade_of(y))[x]
            return {} if f.is_zero(w) else {y: w}
        if cy:
            w = self.weight(self.grade_of(x))[y]
            return {} if f.is_zero(w) else {x: f.neg(w)}
        if x > 0 and y > 0:
            if self.height[x] > self.height[y]:
                return self._flip(x, y)
            return self._expand(x, {y: f.one})
        if x < 0 and y < 0:
            return self.omega(self.bracket_basis(-x, -y))
        if x < 0:
            return self._flip(x, y)
        return self._expand(x, {y: f.one})

    def _expand(self, x: int, target: dict) -> dict:
        """[x, target] for a positive basis element x through its definition."""
        f = self.field
        defn = self.defn[x]
        if defn[0] == "gen":
            i = defn[1]
            out: dict = {}
            for y, c in target.items():
                if y > 0 and not self.is_cartan(y):
                    linalg.axpy(f, out, c, self.etable.get((i, y), {}))
                elif y < 0:
                    img = self.fimg[-y].get(i, {})
                    linalg.axpy(f, out, f.mul(c, self._sign(self.spec.parity[i])), self.omega(img))
                else:
                    linalg.axpy(f, out, c, self.bracket_basis(x, y))
            return out
        if defn[0] == "br":
            _, i, u = defn
            ei = {self.e(i): f.one}
            uu = {u: f.one}
            first = self.bracket(ei, self.bracket(uu, target))
            second = self.bracket(uu, self.bracket(ei, target))
            sign = self._sign(self.spec.parity[i] * self.parity_of(u))
            return linalg.axpy(f, first, f.neg(sign), second)
        b = {defn[1]: f.one}
        return self.bracket(b, self.bracket(b, target))

    def square_basis(self, x) -> dict:
        if self.p != 2:
            raise WrongCharacteristic("squaring is only defined at p = 2")
        if self.parity_of(x) != 1:
            raise NotOdd(f"basis element {x} is even")
        if x > 0:
            return self.sqtable.get(x, {})
        return self.omega(self.sqtable.get(-x, {}))

    # descriptions

    def name(self, x: int) -> str:
        if 0 <= x < self.n:
            return f"h{x + 1}"
        if 0 <= x < self.ncartan:
            return f"d{x - self.n + 1}"
        k = abs(x) - self.ncartan + 1
        return f"x{k}" if x > 0 else f"y{k}"

    def word(self, x: int) -> str:
        if x < 0:
            return f"w({self.word(-x)})"
        if x < self.ncartan:
            return self.name(x)
        defn = self.defn[x]
        if defn[0] == "gen":
            return f"e{defn[1] + 1}"
        if defn[0] == "br":
            return f"[e{defn[1] + 1},{self.word(defn[2])}]"
        return f"({self.word(defn[1])})^2"

    def elements(self) -> list[BasisElement]:
        return [
            BasisElement(x, self.grade_of(x), self.kind(x), self.parity_of(x), self.word(x))
            for x in self.basis
        ]

    def generators(self) -> list[dict]:
        """e_i, f_i and the Cartan basis; they generate g(A)."""
        f = self.field
        out = [{self.e(i): f.one} for i in range(self.n)] + [{self.f(i): f.one} for i in range(self.n)]
        return out + [{x: f.one} for x in range(self.ncartan)]


def build(spec: CartanSpec, caps: Caps | None = None) -> AlgebraBuild:
    return AlgebraBuild(spec, caps)


def root_system(b: AlgebraBuild) -> tuple[dict, list[tuple]]:
    """Multiplicities root -> (even, odd) and the simple roots."""
    mult: dict[tuple, list] = {}
    for x in b.basis:
        if b.is_cartan(x):
            continue
        entry = mult.setdefault(b.grade_of(x), [0, 0])
        entry[b.parity_of(x)] += 1
    positive = sorted(r for r in mult if sum(r) > 0)
    pos_set = set(positive)
    sums = {tuple(a + c for a, c in zip(r, s)) for r in positive for s in positive}
    simple = [r for r in positive if r not in sums]
    if len(simple) != b.n:
        logger.warning("%s: %d indecomposable positive roots for %d nodes", b.spec, len(simple), b.n)
    return {r: tuple(v) for r, v in sorted(mult.items())}, simple


def derived_series(b: presentation.Presentation) -> list[tuple[int, int]]:
    return [s.sdim() for s in presentation.derived_series(b)]


def center(b: presentation.Presentation, space=None) -> presentation.Subspace:
    partners = None
    if space is None and isinstance(b, AlgebraBuild):
        partners = b.generators()
    return presentation.center(b, space, partners)


def simple_subquotient(b: AlgebraBuild, strict: bool = False) -> SimpleCore:
    """The stabilized derived algebra modulo its center.

    The even dimension normally drops by twice the corank. Solvable and other
    degenerate algebras break that rule, so a mismatch is only an error when
    ``strict`` is set.
    """
    series = presentation.derived_series(b)
    stable = series[-1]
    cent = presentation.center(b, stable)
    core = presentation.quotient(b, stable, cent)
    drop = b.sdim()[0] - core.sdim()[0]
    expected = 2 * corank(b.spec)
    if drop != expected:
        message = f"{b.spec}: even dimension drops by {drop}, twice the corank is {expected}"
        if strict:
            raise InternalInconsistency(message)
        logger.warning("%s", message)
    return SimpleCore([s.sdim() for s in series], cent, core, drop == expected)


def is_simple(x: presentation.Presentation) -> bool:
    return presentation.is_simple(x)


def is_solvable(x: presentation.Presentation) -> bool:
    return presentation.is_solvable(x)


def odd_highest_weights(b: AlgebraBuild) -> list[tuple[dict, tuple, tuple]]:
    """Odd vectors killed by every even positive root vector, per root."""
    f = b.field
    partners = [{x: f.one} for x in b.positives if b.parity_of(x) == 0]
    by_root: dict[tuple, list] = {}
    for x in b.basis:
        if not b.is_cartan(x) and b.parity_of(x) == 1:
            by_root.setdefault(b.grade_of(x), []).append({x: f.one})
    out = []
    for root in sorted(by_root):
        for v in presentation._kernel(b, by_root[root], partners):
            out.append((v, root, b.weight(root)))
    return out


def square(b: AlgebraBuild, v: dict) -> dict:
    return b.square(v)
