"""Exact linear algebra over the scalar fields.

Vectors are sparse ``dict[int, scalar]`` with no stored zeros; dense
matrices are lists of lists. Everything is deterministic: pivots are
always the smallest available index.
"""

from __future__ import annotations

import heapq

Vector = dict


def axpy(field, target: dict, c, v: dict) -> dict:
    """target += c*v in place."""
    if field.is_zero(c):
        return target
    for k, a in v.items():
        val = field.add(target.get(k, field.zero), field.mul(c, a))
        if field.is_zero(val):
            target.pop(k, None)
        else:
            target[k] = val
    return target


def scale(field, c, v: dict) -> dict:
    if field.is_zero(c):
        return {}
    return {k: field.mul(c, a) for k, a in v.items()}


def add(field, u: dict, v: dict) -> dict:
    return axpy(field, dict(u), field.one, v)


def sub(field, u: dict, v: dict) -> dict:
    return axpy(field, dict(u), field.neg(field.one), v)


def combine(field, terms) -> dict:
    """Sum of c*v over (c, v) pairs."""
    out = {}
    for c, v in terms:
        axpy(field, out, c, v)
    return out


class Echelon:
    """Incremental echelon basis with tracked combinations.

    Rows are stored by pivot. When ``track`` is set every row carries the
    combination of inserted tags it equals, so a reduced vector can be
    expressed through the inserted vectors.
    """

    def __init__(self, field, track: bool = True):
        self.field = field
        self.track = track
        self.rows: dict[int, tuple[dict, dict]] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: dict) -> tuple[dict, dict]:
        """Return (remainder, acc) with vec = remainder + img(acc)."""
        f = self.field
        v = dict(vec)
        acc: dict = {}
        heap = [k for k in v if k in self.rows]
        heapq.heapify(heap)
        while heap:
            k = heapq.heappop(heap)
            c = v.get(k)
            if c is None:
                continue
            row, combo = self.rows[k]
            for j, a in row.items():
                val = f.sub(v.get(j, f.zero), f.mul(c, a))
                if f.is_zero(val):
                    v.pop(j, None)
                else:
                    if j not in v and j in self.rows:
                        heapq.heappush(heap, j)
                    v[j] = val
            if self.track:
                axpy(f, acc, c, combo)
        return v, acc

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)[0]

    def add(self, vec: dict, tag=None) -> bool:
        """Insert vec; return False when it is already in the span."""
        f = self.field
        rem, acc = self.reduce(vec)
        if not rem:
            return False
        pivot = min(rem)
        inv = f.inv(rem[pivot])
        combo = {}
        if self.track:
            combo = scale(f, f.neg(f.one), acc)
            axpy(f, combo, f.one, {tag: f.one})
            combo = scale(f, inv, combo)
        self.rows[pivot] = (scale(f, inv, rem), combo)
        return True

    def express(self, vec: dict) -> dict | None:
        """Coefficients over inserted tags, or None outside the span."""
        rem, acc = self.reduce(vec)
        return None if rem else acc


def rref(field, matrix: list[list]) -> tuple[list[list], list[int]]:
    f = field
    rows = [list(r) for r in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if not f.is_zero(rows[i][c])), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = f.inv(rows[r][c])
        rows[r] = [f.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not f.is_zero(rows[i][c]):
                factor = rows[i][c]
                rows[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(field, matrix: list[list]) -> int:
    return len(rref(field, matrix)[1])


def nullspace(field, matrix: list[list], ncols: int | None = None) -> list[list]:
    """Basis of {x : M x = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    reduced, pivots = rref(field, matrix) if matrix else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [field.zero] * ncols
        x[fc] = field.one
        for row, pc in zip(reduced, pivots):
            x[pc] = field.neg(row[fc])
        basis.append(x)
    return basis


def transpose(matrix: list[list]) -> list[list]:
    return [list(col) for col in zip(*matrix)]


def left_kernel(field, matrix: list[list]) -> list[list]:
    """Basis of {v : v M = 0}."""
    n = len(matrix)
    if not n:
        return []
    return nullspace(field, transpose(matrix), n)


def solve(field, matrix: list[list], rhs: list) -> list | None:
    """A particular solution of M x = rhs with free variables 0."""
    ncols = len(matrix[0]) if matrix else 0
    augmented = [list(row) + [b] for row, b in zip(matrix, rhs)]
    reduced, pivots = rref(field, augmented)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for row, pc in zip(reduced, pivots):
        x[pc] = row[ncols]
    return x


def solve_sparse(field, columns: list[dict], target: dict) -> dict | None:
    """Coefficients c with sum c_k columns[k] = target, or None."""
    ech = Echelon(field)
    for k, col in enumerate(columns):
        ech.add(col, k)
    return ech.express(target)
