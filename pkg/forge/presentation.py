"""Algebras given by structure constants and the analyses shared by all of them.

A ``Presentation`` knows its basis ids, the parity and grade of each
basis element, the bracket of two basis elements and (at p = 2) the
square of an odd basis element. Grades are tuples of ints forming an
additive grading respected by the bracket; subspaces are always spanned
by vectors homogeneous in (parity, grade).
"""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict

from . import linalg
from .errors import InternalInconsistency, NotOdd, NotStabilized, WrongCharacteristic

logger = logging.getLogger(__name__)

MAX_DERIVED_STEPS = 6


class Presentation:
    field = None
    basis: list = []

    def parity_of(self, x) -> int:
        raise NotImplementedError

    def grade_of(self, x) -> tuple:
        raise NotImplementedError

    def bracket_basis(self, x, y) -> dict:
        raise NotImplementedError

    def square_basis(self, x) -> dict:
        raise NotImplementedError

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def dim(self) -> int:
        return len(self.basis)

    def sdim(self) -> tuple[int, int]:
        odd = sum(self.parity_of(x) for x in self.basis)
        return self.dim - odd, odd

    def vector_parity(self, v: dict) -> int:
        return self.parity_of(next(iter(v)))

    def vector_grade(self, v: dict) -> tuple:
        return self.grade_of(next(iter(v)))

    def bracket(self, u: dict, v: dict) -> dict:
        f = self.field
        out: dict = {}
        for x, a in u.items():
            for y, b in v.items():
                linalg.axpy(f, out, f.mul(a, b), self.bracket_basis(x, y))
        return out

    def square(self, v: dict) -> dict:
        """(sum c_k m_k)^2 = sum c_k^2 m_k^2 + sum_{k<l} c_k c_l [m_k, m_l]."""
        if self.p != 2:
            raise WrongCharacteristic("squaring is only defined at p = 2")
        f = self.field
        items = sorted(v.items())
        if any(self.parity_of(x) == 0 for x, _ in items):
            raise NotOdd("squaring needs an odd element")
        out: dict = {}
        for x, c in items:
            linalg.axpy(f, out, f.mul(c, c), self.square_basis(x))
        for (x, a), (y, b) in itertools.combinations(items, 2):
            linalg.axpy(f, out, f.mul(a, b), self.bracket_basis(x, y))
        return out

    def unit(self, x) -> dict:
        return {x: self.field.one}

    def whole(self) -> "Subspace":
        return Subspace(self, [self.unit(x) for x in self.basis])


class Subspace:
    """Span of homogeneous vectors of a presentation, kept in echelon form."""

    def __init__(self, algebra: Presentation, vectors=()):
        self.algebra = algebra
        self.echelon = linalg.Echelon(algebra.field, track=False)
        self.vectors: list[dict] = []
        for v in vectors:
            self.add(v)

    def add(self, v: dict) -> bool:
        if not v:
            return False
        if self.echelon.add(v):
            self.vectors.append(v)
            return True
        return False

    def contains(self, v: dict) -> bool:
        return self.echelon.contains(v)

    def __len__(self):
        return len(self.vectors)

    def sdim(self) -> tuple[int, int]:
        odd = sum(self.algebra.vector_parity(v) for v in self.vectors)
        return len(self.vectors) - odd, odd

    def groups(self) -> dict:
        out = defaultdict(list)
        for v in self.vectors:
            out[(self.algebra.vector_parity(v), self.algebra.vector_grade(v))].append(v)
        return out


def _homogeneous_parts(algebra: Presentation, v: dict) -> list[dict]:
    parts = defaultdict(dict)
    for x, c in v.items():
        parts[(algebra.parity_of(x), algebra.grade_of(x))][x] = c
    return [parts[k] for k in sorted(parts)]


def derived(algebra: Presentation, space: Subspace) -> Subspace:
    """Brackets of the space with itself plus squares of its odd vectors."""
    out = Subspace(algebra)
    vectors = space.vectors
    target = len(vectors)
    for i, u in enumerate(vectors):
        for v in vectors[i:]:
            for part in _homogeneous_parts(algebra, algebra.bracket(u, v)):
                out.add(part)
            if len(out) == target:
                return out
        if algebra.p == 2 and algebra.vector_parity(u) == 1:
            for part in _homogeneous_parts(algebra, algebra.square(u)):
                out.add(part)
            if len(out) == target:
                return out
    return out


def derived_series(algebra: Presentation, space: Subspace | None = None) -> list[Subspace]:
    """[g, g^(1), ...] ending with the first repeat."""
    current = space or algebra.whole()
    series = [current]
    for _ in range(MAX_DERIVED_STEPS):
        nxt = derived(algebra, current)
        series.append(nxt)
        if len(nxt) == len(current):
            return series
        current = nxt
    raise NotStabilized(f"derived series did not stabilize within {MAX_DERIVED_STEPS} steps")


def _kernel(algebra: Presentation, vectors: list[dict], partners: list[dict]) -> list[dict]:
    """Combinations of vectors whose brackets with every partner vanish."""
    f = algebra.field
    ech = linalg.Echelon(f)
    kernel = []
    for t, v in enumerate(vectors):
        image = {}
        for k, partner in enumerate(partners):
            for x, c in algebra.bracket(v, partner).items():
                image[(k, x)] = c
        combo = ech.express(image) if image else {}
        if combo is None:
            ech.add(image, t)
            continue
        z = dict(v)
        for s, c in combo.items():
            linalg.axpy(f, z, f.neg(c), vectors[s])
        if z:
            kernel.append(z)
    return kernel


def center(algebra: Presentation, space: Subspace | None = None, partners: list[dict] | None = None) -> Subspace:
    """Elements of the space commuting with all of it (or with the partners)."""
    space = space or algebra.whole()
    partners = partners if partners is not None else space.vectors
    zero_grade = [v for v in partners if not any(algebra.vector_grade(v))]
    out = Subspace(algebra)
    for key, vectors in sorted(space.groups().items()):
        candidates = _kernel(algebra, vectors, zero_grade) if zero_grade else vectors
        if candidates:
            for z in _kernel(algebra, candidates, partners):
                out.add(z)
    return out


class Induced(Presentation):
    """span(basis + kernel) / span(kernel), with the given vectors as basis.

    With an empty kernel this is a subalgebra; otherwise a subquotient.
    ``regrade`` maps parent grades to the grading of the result.
    """

    def __init__(self, parent: Presentation, vectors: list[dict], kernel: list[dict] = (), regrade=None, names=None):
        self.parent = parent
        self.field = parent.field
        self.vectors = list(vectors)
        self.kernel = list(kernel)
        self.basis = list(range(len(self.vectors)))
        self.names = names or [f"v{k}" for k in self.basis]
        self._regrade = regrade or (lambda g: g)
        self._echelon = linalg.Echelon(self.field)
        for k, v in enumerate(self.kernel):
            self._echelon.add(v, ("k", k))
        for k, v in enumerate(self.vectors):
            if not self._echelon.add(v, ("b", k)):
                raise InternalInconsistency("induced basis is linearly dependent")
        self._parity = [parent.vector_parity(v) for v in self.vectors]
        self._grade = [self._regrade(parent.vector_grade(v)) for v in self.vectors]
        self._brackets: dict = {}
        self._squares: dict = {}

    def parity_of(self, x) -> int:
        return self._parity[x]

    def grade_of(self, x) -> tuple:
        return self._grade[x]

    def coordinates(self, w: dict) -> dict:
        combo = self._echelon.express(w)
        if combo is None:
            raise InternalInconsistency("bracket leaves the induced subspace")
        return {k: c for (tag, k), c in combo.items() if tag == "b"}

    def lift(self, v: dict) -> dict:
        return linalg.combine(self.field, ((c, self.vectors[k]) for k, c in v.items()))

    def bracket_basis(self, x, y) -> dict:
        key = (x, y)
        if key not in self._brackets:
            self._brackets[key] = self.coordinates(self.parent.bracket(self.vectors[x], self.vectors[y]))
        return self._brackets[key]

    def square_basis(self, x) -> dict:
        if x not in self._squares:
            self._squares[x] = self.coordinates(self.parent.square(self.vectors[x]))
        return self._squares[x]


def restrict(algebra: Presentation, space: Subspace, regrade=None) -> Induced:
    return Induced(algebra, space.vectors, regrade=regrade)


def quotient(algebra: Presentation, space: Subspace, ideal: Subspace) -> Induced:
    """space / ideal, with a complement of the ideal chosen greedily."""
    ech = linalg.Echelon(algebra.field, track=False)
    for v in ideal.vectors:
        ech.add(v)
    complement = [v for v in space.vectors if ech.add(v)]
    return Induced(algebra, complement, ideal.vectors)


def even_part(algebra: Presentation) -> Induced:
    return Induced(algebra, [algebra.unit(x) for x in algebra.basis if algebra.parity_of(x) == 0])


def ideal_closure(algebra: Presentation, v: dict, stop=None) -> Subspace:
    """Smallest subspace containing v, stable under ad and odd squaring.

    ``stop`` is called on every new single-term vector; a true result
    ends the search early and the partial closure is returned.
    """
    closure = Subspace(algebra)
    queue = []
    for part in _homogeneous_parts(algebra, v):
        if closure.add(part):
            queue.append(part)
    partners = [algebra.unit(x) for x in algebra.basis]
    while queue:
        u = queue.pop(0)
        new = [algebra.bracket(partner, u) for partner in partners]
        if algebra.p == 2 and algebra.vector_parity(u) == 1:
            new.append(algebra.square(u))
        for w in new:
            for part in _homogeneous_parts(algebra, w):
                if closure.add(part):
                    if stop is not None and len(part) == 1 and stop(next(iter(part))):
                        return closure
                    queue.append(part)
        if len(closure) == algebra.dim:
            break
    return closure


def generated_subalgebra(algebra: Presentation, generators: list[dict]) -> Subspace:
    """Subalgebra generated by homogeneous vectors, odd squares included at p = 2.

    Generators need only be homogeneous for the parity and for whatever
    grading the caller reads the result in; the span is closed under
    ad of every generator, which by the Jacobi identity is all brackets.
    """
    span = Subspace(algebra)
    queue = [g for g in generators if span.add(g)]
    generators = list(span.vectors)
    while queue:
        u = queue.pop(0)
        new = [algebra.bracket(g, u) for g in generators]
        if algebra.p == 2 and algebra.vector_parity(u) == 1:
            new.append(algebra.square(u))
        for w in new:
            if span.add(w):
                queue.append(w)
        if len(span) == algebra.dim:
            break
    return span



def is_simple(algebra: Presentation) -> bool:
    """Every basis element generates the whole algebra as an ideal."""
    if algebra.dim <= 1:
        return False
    generating: set = set()
    for x in algebra.basis:
        if x in generating:
            continue
        closure = ideal_closure(algebra, algebra.unit(x), stop=generating.__contains__)
        if len(closure) < algebra.dim and not _hit(closure, generating):
            logger.debug("basis element %s generates a proper ideal of dim %d", x, len(closure))
            return False
        generating.add(x)
    return True


def _hit(closure: Subspace, generating: set) -> bool:
    return any(len(v) == 1 and next(iter(v)) in generating for v in closure.vectors)


def is_solvable(algebra: Presentation) -> bool:
    current = algebra.whole()
    for _ in range(algebra.dim + 1):
        if not len(current):
            return True
        nxt = derived(algebra, current)
        if len(nxt) == len(current):
            return False
        current = nxt
    return not len(current)


def _sign(field, parity_product: int):
    return field.neg(field.one) if parity_product % 2 else field.one


def check_jacobi(algebra: Presentation, triples=None) -> list[tuple]:
    """Violations of super anticommutativity, Jacobi and the squaring identities."""
    f = algebra.field
    basis = algebra.basis
    violations = []
    pairs = itertools.combinations_with_replacement(basis, 2)
    for x, y in pairs:
        px, py = algebra.parity_of(x), algebra.parity_of(y)
        lhs = algebra.bracket_basis(x, y)
        rhs = linalg.scale(f, f.neg(_sign(f, px * py)), algebra.bracket_basis(y, x))
        if lhs != rhs:
            violations.append(("anticommutativity", x, y))
        if x == y and (px == 0 or f.p == 2) and lhs:
            violations.append(("self bracket", x, y))
    if triples is None:
        triples = itertools.product(basis, repeat=3)
    for x, y, z in triples:
        px, py = algebra.parity_of(x), algebra.parity_of(y)
        ex, ey, ez = algebra.unit(x), algebra.unit(y), algebra.unit(z)
        lhs = algebra.bracket(ex, algebra.bracket(ey, ez))
        rhs = algebra.bracket(algebra.bracket(ex, ey), ez)
        linalg.axpy(f, rhs, _sign(f, px * py), algebra.bracket(ey, algebra.bracket(ex, ez)))
        if lhs != rhs:
            violations.append(("jacobi", x, y, z))
    if f.p == 2:
        for x in basis:
            if algebra.parity_of(x) != 1:
                continue
            ex = algebra.unit(x)
            sq = algebra.square(ex)
            for y in basis:
                ey = algebra.unit(y)
                if algebra.bracket(sq, ey) != algebra.bracket(ex, algebra.bracket(ex, ey)):
                    violations.append(("squaring", x, y))
    return violations


def check_grading(algebra: Presentation) -> list[tuple]:
    violations = []
    for x, y in itertools.combinations_with_replacement(algebra.basis, 2):
        want = tuple(a + b for a, b in zip(algebra.grade_of(x), algebra.grade_of(y)))
        if any(algebra.grade_of(z) != want for z in algebra.bracket_basis(x, y)):
            violations.append(("bracket", x, y))
    if algebra.p == 2:
        for x in algebra.basis:
            if algebra.parity_of(x) == 1:
                want = tuple(2 * a for a in algebra.grade_of(x))
                if any(algebra.grade_of(z) != want for z in algebra.square_basis(x)):
                    violations.append(("square", x))
    return violations
