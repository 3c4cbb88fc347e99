"""Reflections of simple root systems and the orbit of inequivalent Cartan matrices.

All reflections of one algebra are carried out inside a single finite
build: a simple system is a list of roots of that build, the reflection
in sigma_k swaps the positive multiples of sigma_k for their negatives,
and the new Cartan matrix is read off from the root vectors of the new
simple roots.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field

from . import linalg
from .builder import FINITE, AlgebraBuild, Caps, build, root_system
from .cartan import EVEN, ODD, CartanSpec, canonical_form, has_symmetric_zeros, normalize, ordered_form
from .conf import engine_settings
from .errors import (
    CapExceeded,
    InternalInconsistency,
    NonIntegerCoefficient,
    NotIsotropic,
    OrbitCapExceeded,
    UndefinedReflection,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReflectionStep:
    source: CartanSpec
    node: int
    target: CartanSpec
    coefficients: tuple


@dataclass
class Orbit:
    """Matrices reachable by reflections, kept at two resolutions.

    ``ordered`` holds every node-ordered matrix (free rows scaled, node
    labels kept); ``members`` holds their classes up to permutation and
    rescaling. Tables that list a relabelled matrix separately count the
    former.
    """

    members: list
    representatives: list
    edges: list
    start: int = 0
    sdim: tuple | None = None
    ordered: list = field(default_factory=list)
    ordered_edges: list = field(default_factory=list)
    classes: list = field(default_factory=list)

    def __len__(self):
        return len(self.members)

    @property
    def ordered_count(self) -> int:
        return len(self.ordered) or len(self.members)

    def index_of(self, spec: CartanSpec) -> int | None:
        canon = canonical_form(spec)
        try:
            return self.members.index(canon)
        except ValueError:
            return None

    def rectangle(self) -> list[list]:
        """Row m, column k: the member reached from member m through node k."""
        rows = [[None] * rep.n for rep in self.representatives]
        for source, node, target in self.edges:
            rows[source][node] = target
        return rows

    def ordered_rectangle(self) -> list[list]:
        rows = [[None] * m.n for m in self.ordered]
        for source, node, target in self.ordered_edges:
            rows[source][node] = target
        return rows

    def to_json(self) -> dict:
        return {
            "members": [m.to_json() for m in self.representatives],
            "canonical": [m.to_json() for m in self.members],
            "edges": [{"from": s, "node": k, "to": t} for s, k, t in self.edges],
            "ordered": [m.to_json() for m in self.ordered],
            "ordered_edges": [{"from": s, "node": k, "to": t} for s, k, t in self.ordered_edges],
            "classes": list(self.classes),
            "start": self.start,
            "sdim": {"even": self.sdim[0], "odd": self.sdim[1]} if self.sdim else None,
        }


def reflection_coefficient(spec: CartanSpec, k: int, j: int) -> int:
    """B_kj from the case table on the rows of the Cartan matrix."""
    f = spec.field
    p = spec.p
    akk, akj = spec[k, k], spec[k, j]
    if not f.is_zero(akk):
        if spec.parity[k] == EVEN:
            if p == 2 and spec[j, k] == akk:
                return 2
            value = f.neg(f.div(f.mul(f.from_int(2), akj), akk))
        else:
            value = f.neg(f.div(akj, akk))
        lift = f.integer_value(value)
        if lift is None:
            raise NonIntegerCoefficient(
                f"-A[{k + 1}][{j + 1}]/A[{k + 1}][{k + 1}] = {f.to_text(value)} is not in Z/{p}"
            )
        return lift
    if spec.parity[k] == ODD:
        return 0 if f.is_zero(akj) else 1
    return 0 if f.is_zero(akj) else p - 1


def reflection_coefficients(spec: CartanSpec, k: int) -> tuple:
    return tuple(None if j == k else reflection_coefficient(spec, k, j) for j in range(spec.n))


class RootSystemView:
    """Roots of a finite build and the matrices of its simple systems."""

    def __init__(self, b: AlgebraBuild):
        if b.verdict != FINITE:
            raise CapExceeded(f"{b.spec} did not build to a finite algebra")
        self.b = b
        self.mult, _ = root_system(b)
        self.vectors: dict[tuple, list] = {}
        for x in b.basis:
            if not b.is_cartan(x):
                self.vectors.setdefault(b.grade_of(x), []).append(x)
        self.positive = frozenset(r for r in self.mult if sum(r) > 0)
        self.start = tuple(b.root[b.e(i)] for i in range(b.n))

    def root_vector(self, root: tuple) -> dict:
        ids = self.vectors.get(root, [])
        if len(ids) != 1:
            raise UndefinedReflection(f"root space of {root} has dimension {len(ids)}")
        return {ids[0]: self.b.field.one}

    def eigenvalue(self, h: dict, root: tuple):
        f = self.b.field
        weights = self.b.weight(root)
        out = f.zero
        for x, c in h.items():
            out = f.add(out, f.mul(c, weights[x]))
        return out

    def parity(self, root: tuple) -> int:
        return sum(c * q for c, q in zip(root, self.b.spec.parity)) % 2

    def matrix(self, simple: tuple) -> CartanSpec:
        """Cartan matrix of a simple system, from its Chevalley generators."""
        b = self.b
        rows = []
        for sigma in simple:
            h = b.bracket(self.root_vector(sigma), self.root_vector(tuple(-c for c in sigma)))
            if not h:
                raise UndefinedReflection(f"[X+, X-] vanishes for the simple root {sigma}")
            rows.append([self.eigenvalue(h, other) for other in simple])
        parity = tuple(self.parity(s) for s in simple)
        return normalize(b.field, rows, parity, symmetric_zeros=has_symmetric_zeros(b.spec))

    def reflect(self, positive: frozenset, simple: tuple, k: int) -> tuple[frozenset, tuple, tuple]:
        sigma = simple[k]
        multiples = {r for r in positive if _is_multiple(r, sigma)}
        flipped = (positive - multiples) | {tuple(-c for c in r) for r in multiples}
        minus = tuple(-c for c in sigma)
        new_simple = []
        coefficients = []
        for j, tau in enumerate(simple):
            if j == k:
                new_simple.append(minus)
                coefficients.append(None)
                continue
            t = 0
            while _shift(tau, sigma, t + 1) in self.mult:
                t += 1
            new_simple.append(_shift(tau, sigma, t))
            coefficients.append(t)
        indecomposable = _indecomposables(flipped)
        if len(indecomposable) != len(simple) or set(indecomposable) != set(new_simple):
            raise UndefinedReflection(f"reflection in node {k + 1} does not give a simple system")
        return frozenset(flipped), tuple(new_simple), tuple(coefficients)


def _is_multiple(r: tuple, sigma: tuple) -> bool:
    ratio = None
    for a, s in zip(r, sigma):
        if s == 0:
            if a:
                return False
            continue
        if a % s:
            return False
        if ratio is None:
            ratio = a // s
        elif ratio != a // s:
            return False
    return ratio is not None and ratio > 0


def _shift(tau: tuple, sigma: tuple, t: int) -> tuple:
    return tuple(a + t * s for a, s in zip(tau, sigma))


def _indecomposables(positive) -> list:
    sums = {tuple(a + c for a, c in zip(r, s)) for r in positive for s in positive}
    return sorted(r for r in positive if r not in sums)


def _cross_check(spec: CartanSpec, k: int, coefficients: tuple):
    for j, c in enumerate(coefficients):
        if j == k:
            continue
        try:
            expected = reflection_coefficient(spec, k, j)
        except NonIntegerCoefficient as exc:
            logger.debug("%s", exc)
            continue
        if expected != c:
            logger.warning(
                "%s, node %d: root string gives B_%d%d = %d, case table gives %d",
                spec, k + 1, k + 1, j + 1, c, expected,
            )


def reflect(spec: CartanSpec, k: int, caps: Caps | None = None) -> CartanSpec:
    view = RootSystemView(build(spec, caps))
    positive, simple, coefficients = view.reflect(view.positive, view.start, k)
    _cross_check(spec, k, coefficients)
    return view.matrix(simple)


def reflection_step(spec: CartanSpec, k: int, caps: Caps | None = None) -> ReflectionStep:
    view = RootSystemView(build(spec, caps))
    _, simple, coefficients = view.reflect(view.positive, view.start, k)
    return ReflectionStep(spec, k, view.matrix(simple), coefficients)


@dataclass
class Transport:
    plus: list
    minus: list
    cartan: list
    spec: CartanSpec


def transport_generators(b: AlgebraBuild, k: int) -> Transport:
    """New Chevalley generators for the odd reflection in node k."""
    spec = b.spec
    f = b.field
    if spec.parity[k] != ODD or not f.is_zero(spec[k, k]):
        raise NotIsotropic(f"node {k + 1} is not odd isotropic")
    e = [{b.e(i): f.one} for i in range(spec.n)]
    fm = [{b.f(i): f.one} for i in range(spec.n)]
    plus, minus = [], []
    for j in range(spec.n):
        if j == k:
            plus.append(fm[k])
            minus.append(e[k])
        elif not f.is_zero(spec[k, j]):
            plus.append(b.bracket(e[k], e[j]))
            minus.append(b.bracket(fm[k], fm[j]))
        else:
            plus.append(e[j])
            minus.append(fm[j])
    cartan = [b.bracket(x, y) for x, y in zip(plus, minus)]
    rows = []
    for i, h in enumerate(cartan):
        row = []
        for j, x in enumerate(plus):
            image = b.bracket(h, x)
            value = _proportion(f, image, x)
            if value is None or _proportion(f, b.bracket(h, minus[j]), minus[j]) != f.neg(value):
                raise InternalInconsistency(f"transported h{i + 1} does not act diagonally on node {j + 1}")
            if i != j and b.bracket(plus[i], minus[j]):
                raise InternalInconsistency(f"[X{i + 1}+, X{j + 1}-] does not vanish after transport")
            row.append(value)
        rows.append(row)
    parity = tuple(b.vector_parity(x) for x in plus)
    return Transport(plus, minus, cartan, normalize(f, rows, parity, symmetric_zeros=has_symmetric_zeros(spec)))


def _proportion(f, image: dict, x: dict):
    """c with image = c*x, or None."""
    if not image:
        return f.zero
    key = next(iter(x))
    c = f.div(image.get(key, f.zero), x[key])
    return c if linalg.sub(f, image, linalg.scale(f, c, x)) == {} else None


def enumerate_orbit(spec: CartanSpec, caps: Caps | None = None, orbit_cap: int | None = None,
                    verify_sdim: bool | None = None, prebuilt: AlgebraBuild | None = None) -> Orbit:
    """Breadth-first closure under every defined reflection.

    The walk runs over node-ordered matrices; ``orbit_cap`` bounds their
    number. Classes are collected on the side.
    """
    conf = engine_settings()
    orbit_cap = orbit_cap or conf.orbit_cap
    verify_sdim = conf.verify_orbit_sdim if verify_sdim is None else verify_sdim
    b = prebuilt if prebuilt is not None else build(spec, caps)
    view = RootSystemView(b)
    start = ordered_form(view.matrix(view.start))
    ordered = [start]
    seen = {start: 0}
    states = [(view.positive, view.start)]
    ordered_edges = []
    members = [canonical_form(start)]
    index = {members[0]: 0}
    classes = [0]
    queue = deque([0])
    while queue:
        m = queue.popleft()
        positive, simple = states[m]
        for k in range(len(simple)):
            try:
                new_positive, new_simple, coefficients = view.reflect(positive, simple, k)
                target = ordered_form(view.matrix(new_simple))
            except UndefinedReflection as exc:
                logger.debug("matrix %d node %d: %s", m, k + 1, exc)
                continue
            _cross_check(ordered[m], k, coefficients)
            t = seen.get(target)
            if t is None:
                t = len(ordered)
                if t >= orbit_cap:
                    raise OrbitCapExceeded(f"orbit of {spec} has more than {orbit_cap} matrices")
                ordered.append(target)
                seen[target] = t
                states.append((new_positive, new_simple))
                canon = canonical_form(target)
                if canon not in index:
                    index[canon] = len(members)
                    members.append(canon)
                classes.append(index[canon])
                queue.append(t)
            ordered_edges.append((m, k, t))
    first = {}
    for i, c in enumerate(classes):
        first.setdefault(c, i)
    representatives = [ordered[first[c]] for c in range(len(members))]
    edges = [(classes[s], k, classes[t]) for s, k, t in ordered_edges if first[classes[s]] == s]
    orbit = Orbit(members, representatives, edges, 0, b.sdim(), ordered, ordered_edges, classes)
    logger.info("orbit of %s: %d matrices in %d classes", spec, len(ordered), len(members))
    if verify_sdim:
        for rep in representatives[1:]:
            other = build(rep, caps)
            if other.sdim() != b.sdim():
                raise InternalInconsistency(f"{rep} builds to {other.sdim()}, expected {b.sdim()}")
    return orbit
