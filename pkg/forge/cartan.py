"""Cartan matrices with parities: parsing, normalization, equivalence."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import networkx as nx

from . import linalg
from .errors import NotNormalizable, ParseError, SizeTooLarge, ZeroPatternAsymmetric
from .scalars import field_for

logger = logging.getLogger(__name__)

EVEN = 0
ODD = 1
MAX_CANONICAL = 10


class Mark(str, Enum):
    TWO = "2"
    OD = "od"
    EV = "ev"
    ONE = "1"
    ZERO = "0"


MARK_ORDER = {Mark.TWO: 0, Mark.OD: 1, Mark.EV: 2, Mark.ONE: 3, Mark.ZERO: 4}
FREE_MARKS = (Mark.EV, Mark.ZERO)

_PARITY_TOKENS = {"ev": EVEN, "even": EVEN, "0": EVEN, "od": ODD, "odd": ODD, "1": ODD}


@dataclass(frozen=True)
class CartanSpec:
    field: object
    entries: tuple
    marks: tuple
    parity: tuple

    @property
    def n(self) -> int:
        return len(self.parity)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def parametric(self) -> bool:
        return self.field.parametric

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> list[list]:
        return [list(r) for r in self.entries]

    def is_free(self, i: int) -> bool:
        """Row i may be rescaled (zero diagonal)."""
        return self.marks[i] in FREE_MARKS

    def token(self, i: int, j: int) -> str:
        if i == j:
            return self.marks[i].value
        return self.field.to_text(self.entries[i][j])

    def to_json(self) -> dict:
        payload = {
            "p": self.p,
            "matrix": [[self.token(i, j) for j in range(self.n)] for i in range(self.n)],
            "parity": ["od" if x else "ev" for x in self.parity],
        }
        if self.parametric:
            payload["parametric"] = True
        if not has_symmetric_zeros(self):
            payload["symmetric_zeros"] = False
        return payload

    def __str__(self):
        rows = ",".join("(" + ",".join(self.token(i, j) for j in range(self.n)) + ")" for i in range(self.n))
        return f"({rows}) [{''.join(str(x) for x in self.parity)}] p={self.p}"


def mark_value(field, mark: Mark):
    if mark is Mark.TWO:
        return field.from_int(2)
    if mark in (Mark.OD, Mark.ONE):
        return field.one
    return field.zero


def parse_parity(parity) -> tuple[int, ...]:
    if isinstance(parity, str):
        parity = list(parity)
    out = []
    for token in parity:
        key = str(token).strip().lower()
        if key not in _PARITY_TOKENS:
            raise ParseError(f"unknown parity token {token!r}")
        out.append(_PARITY_TOKENS[key])
    return tuple(out)


def _needs_parameter(matrix) -> bool:
    return any("a" in str(cell) for row in matrix for cell in row)


def make_spec(p: int, matrix, parity, parametric: bool | None = None, symmetric_zeros: bool = True) -> CartanSpec:
    """Parse a matrix of tokens (ints or strings) and normalize it.

    With symmetric_zeros=False a one-sided zero (A_ij = 0 != A_ji) is
    accepted; such matrices arise by folding along a diagram symmetry.
    """
    parity = parse_parity(parity)
    n = len(parity)
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ParseError("matrix must be square and match the parity vector")
    if parametric is None:
        parametric = _needs_parameter(matrix)
    field = field_for(p, parametric)
    rows = []
    for i, row in enumerate(matrix):
        out = []
        for j, cell in enumerate(row):
            token = str(cell).strip()
            if i == j and token in ("ev", "od"):
                if parity[i] != EVEN:
                    raise NotNormalizable(f"diagonal token {token!r} on odd node {i + 1}")
                out.append(field.zero if token == "ev" else field.one)
            elif token in ("ev", "od"):
                raise ParseError(f"token {token!r} is only allowed on the diagonal")
            else:
                out.append(field.parse(token))
        rows.append(out)
    return normalize(field, rows, parity, symmetric_zeros=symmetric_zeros)


def spec_from_json(payload: dict) -> CartanSpec:
    try:
        return make_spec(
            int(payload["p"]),
            payload["matrix"],
            payload["parity"],
            payload.get("parametric"),
            symmetric_zeros=bool(payload.get("symmetric_zeros", True)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"invalid CartanSpec payload: {exc}") from exc


def _check_zero_pattern(field, rows):
    n = len(rows)
    for i in range(n):
        for j in range(i + 1, n):
            if field.is_zero(rows[i][j]) != field.is_zero(rows[j][i]):
                raise ZeroPatternAsymmetric(f"A[{i + 1}][{j + 1}] and A[{j + 1}][{i + 1}] differ in being zero")


def normalize(field, rows, parity, symmetric_zeros: bool = True) -> CartanSpec:
    f = field
    n = len(rows)
    parity = tuple(parity)
    if symmetric_zeros:
        _check_zero_pattern(f, rows)
    rows = [list(r) for r in rows]
    marks = []
    for i in range(n):
        d = rows[i][i]
        if parity[i] == EVEN:
            if f.is_zero(d):
                marks.append(Mark.EV)
                continue
            mark = Mark.TWO if f.p > 2 else Mark.OD
        else:
            if f.is_zero(d):
                marks.append(Mark.ZERO)
                continue
            mark = Mark.ONE
        factor = f.div(mark_value(f, mark), d)
        rows[i] = [f.mul(factor, x) for x in rows[i]]
        marks.append(mark)
    spec = CartanSpec(f, tuple(tuple(r) for r in rows), tuple(marks), parity)
    return _prefer_symmetric(spec)


def _prefer_symmetric(spec: CartanSpec) -> CartanSpec:
    """Rescale zero-diagonal rows towards a symmetric matrix when possible."""
    if spec.n < 2 or not is_indecomposable(spec) or not any(spec.is_free(i) for i in range(spec.n)):
        return spec
    d = symmetrizer(spec)
    if d is None:
        return spec
    f = spec.field
    fixed = {d[i] for i in range(spec.n) if not spec.is_free(i)}
    if len(fixed) > 1:
        return spec
    mu = f.inv(fixed.pop()) if fixed else f.one
    rows = spec.rows()
    for i in range(spec.n):
        if spec.is_free(i):
            factor = f.mul(mu, d[i])
            rows[i] = [f.mul(factor, x) for x in rows[i]]
    return CartanSpec(f, tuple(tuple(r) for r in rows), spec.marks, spec.parity)


def adjacency_graph(spec: CartanSpec) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(spec.n))
    for i in range(spec.n):
        for j in range(i + 1, spec.n):
            if not (spec.field.is_zero(spec[i, j]) and spec.field.is_zero(spec[j, i])):
                g.add_edge(i, j)
    return g


def is_indecomposable(spec: CartanSpec) -> bool:
    return spec.n <= 1 or nx.is_connected(adjacency_graph(spec))


def symmetrizer(spec: CartanSpec) -> tuple | None:
    """D with DA symmetric and D_1 = 1, or None."""
    f = spec.field
    d = [None] * spec.n
    d[0] = f.one
    for i, j in nx.bfs_edges(adjacency_graph(spec), 0):
        if f.is_zero(spec[i, j]) or f.is_zero(spec[j, i]):
            return None
        d[j] = f.div(f.mul(d[i], spec[i, j]), spec[j, i])
    if any(x is None for x in d):
        return None
    for i in range(spec.n):
        for j in range(i + 1, spec.n):
            if f.mul(d[i], spec[i, j]) != f.mul(d[j], spec[j, i]):
                return None
    return tuple(d)


def is_symmetric(spec: CartanSpec) -> bool:
    return all(spec[i, j] == spec[j, i] for i in range(spec.n) for j in range(i))


def has_symmetric_zeros(spec: CartanSpec) -> bool:
    f = spec.field
    return all(f.is_zero(spec[i, j]) == f.is_zero(spec[j, i]) for i in range(spec.n) for j in range(i))


def ordered_form(spec: CartanSpec) -> CartanSpec:
    """Free rows scaled so their first nonzero off-diagonal entry is 1; node order kept."""
    f = spec.field
    factors = []
    for i in range(spec.n):
        lead = next((spec[i, j] for j in range(spec.n) if j != i and not f.is_zero(spec[i, j])), None)
        factors.append(f.inv(lead) if spec.is_free(i) and lead is not None else f.one)
    return rescale(spec, factors)


def permute(spec: CartanSpec, perm) -> CartanSpec:
    """Position k of the result holds node perm[k] of spec."""
    entries = tuple(tuple(spec[a, b] for b in perm) for a in perm)
    return CartanSpec(
        spec.field,
        entries,
        tuple(spec.marks[a] for a in perm),
        tuple(spec.parity[a] for a in perm),
    )


def rescale(spec: CartanSpec, factors) -> CartanSpec:
    f = spec.field
    rows = spec.rows()
    for i, c in enumerate(factors):
        if c != f.one:
            if not spec.is_free(i):
                raise NotNormalizable(f"row {i + 1} has a fixed diagonal and cannot be rescaled")
            rows[i] = [f.mul(c, x) for x in rows[i]]
    return CartanSpec(f, tuple(tuple(r) for r in rows), spec.marks, spec.parity)


def _entry_key(field, v):
    return (1,) if field.is_zero(v) else (0, field.key(v))


def _diag_key(spec, i):
    return (spec.parity[i], MARK_ORDER[spec.marks[i]])


def _refine_colours(spec: CartanSpec) -> list[int]:
    f = spec.field
    n = spec.n
    graph = adjacency_graph(spec)

    def value(i, j):
        return (0,) if spec.is_free(i) else (1, f.key(spec[i, j]))

    def relabel(signatures):
        order = sorted(set(signatures))
        index = {s: k for k, s in enumerate(order)}
        return [index[s] for s in signatures]

    colours = relabel([_diag_key(spec, i) for i in range(n)])
    while True:
        signatures = [
            (colours[i], tuple(sorted((colours[j], value(i, j), value(j, i)) for j in graph[i])))
            for i in range(n)
        ]
        refined = relabel(signatures)
        if len(set(refined)) == len(set(colours)):
            return refined
        colours = refined


def canonicalize(spec: CartanSpec) -> tuple[CartanSpec, tuple[int, ...]]:
    """Canonical representative and the node order producing it."""
    n = spec.n
    if n > MAX_CANONICAL:
        raise SizeTooLarge(f"canonical form is limited to size {MAX_CANONICAL}, got {n}")
    f = spec.field
    a = spec.entries
    colours = _refine_colours(spec)
    slots = sorted(colours)
    free = [spec.is_free(i) for i in range(n)]
    best_steps: list = []
    best = {"perm": None, "scales": None}
    perm: list[int] = []
    used = [False] * n

    def scaled(s, v):
        return v if s is None else f.mul(s, v)

    def search(k: int, scales: list):
        if k == n:
            if best["perm"] is None:
                best["perm"] = tuple(perm)
                best["scales"] = list(scales)
            return
        for node in range(n):
            if used[node] or colours[node] != slots[k]:
                continue
            new_scales = list(scales)
            own = f.one
            if free[node]:
                own = None
                for j in range(k):
                    if not f.is_zero(a[node][perm[j]]):
                        own = f.inv(a[node][perm[j]])
                        break
            new_scales.append(own)
            for j in range(k):
                if new_scales[j] is None and not f.is_zero(a[perm[j]][node]):
                    new_scales[j] = f.inv(a[perm[j]][node])
            step = (_diag_key(spec, node),) + tuple(
                (
                    _entry_key(f, scaled(own, a[node][perm[j]])),
                    _entry_key(f, scaled(new_scales[j], a[perm[j]][node])),
                )
                for j in range(k)
            )
            if k < len(best_steps):
                if step > best_steps[k]:
                    continue
                if step < best_steps[k]:
                    del best_steps[k:]
                    best_steps.append(step)
                    best["perm"] = None
            else:
                best_steps.append(step)
            used[node] = True
            perm.append(node)
            search(k + 1, new_scales)
            perm.pop()
            used[node] = False

    search(0, [])
    order = best["perm"]
    scales = [f.one if s is None else s for s in best["scales"]]
    rows = []
    for k in range(n):
        row = []
        for l in range(n):
            if k == l:
                row.append(mark_value(f, spec.marks[order[k]]))
            else:
                row.append(f.mul(scales[k], a[order[k]][order[l]]))
        rows.append(tuple(row))
    canonical = CartanSpec(
        f,
        tuple(rows),
        tuple(spec.marks[i] for i in order),
        tuple(spec.parity[i] for i in order),
    )
    return canonical, order


def canonical_form(spec: CartanSpec) -> CartanSpec:
    return canonicalize(spec)[0]


def equivalent(s: CartanSpec, t: CartanSpec) -> bool:
    return s.n == t.n and canonical_form(s) == canonical_form(t)


def rank(spec: CartanSpec) -> int:
    return linalg.rank(spec.field, spec.rows())


def corank(spec: CartanSpec) -> int:
    return spec.n - rank(spec)


def left_kernel(spec: CartanSpec) -> list[list]:
    """Rows of T: a basis of {v : vA = 0}."""
    return linalg.left_kernel(spec.field, spec.rows())


def grading_completion(spec: CartanSpec) -> list[list]:
    """Rows e_j completing A to rank n, smallest j first."""
    f = spec.field
    ech = linalg.Echelon(f, track=False)
    for row in spec.rows():
        ech.add({j: x for j, x in enumerate(row) if not f.is_zero(x)})
    missing = spec.n - len(ech)
    b = []
    for j in range(spec.n):
        if len(b) == missing:
            break
        if ech.add({j: f.one}):
            b.append([f.one if c == j else f.zero for c in range(spec.n)])
    return b


def specialize_spec(spec: CartanSpec, value, target) -> CartanSpec:
    """Evaluate every entry at a = value in the target field and re-normalize."""
    from .scalars import specialize

    rows = [[specialize(spec.field, x, value, target) for x in row] for row in spec.entries]
    return normalize(target, rows, spec.parity)
