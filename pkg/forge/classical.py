"""Matrix realizations of the classical relatives, independent of Cartan matrices.

Matrices are sparse ``dict[(row, col), scalar]``; a supermatrix format is
the tuple of row parities, and the parity of the entry (r, c) is
p(r) + p(c). The ortho-orthogonal and periplectic families live at p = 2
only; in their (A C; D A^T) shape the half size ``shape`` locates the
blocks C (upper right) and D (lower left) used by the cocycle and by
I_0 = diag(1, 0).
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

from . import linalg, presentation
from .errors import Degenerate, InternalInconsistency, InvalidParams, WrongShape
from .scalars import PrimeField

logger = logging.getLogger(__name__)

COCYCLE_SAMPLE = 24

FAMILIES = ("gl", "sl", "psl", "q", "oo_II", "oo_IPi", "oo_PiPi", "o_I", "o_Pi", "pe")


def mat_mul(field, x: dict, y: dict) -> dict:
    rows: dict = {}
    for (k, c), b in y.items():
        rows.setdefault(k, []).append((c, b))
    out: dict = {}
    for (r, k), a in x.items():
        for c, b in rows.get(k, ()):
            val = field.add(out.get((r, c), field.zero), field.mul(a, b))
            if field.is_zero(val):
                out.pop((r, c), None)
            else:
                out[(r, c)] = val
    return out


def mat_parity(parities: tuple, x: dict) -> int:
    r, c = next(iter(x))
    return (parities[r] + parities[c]) % 2


def supercommutator(field, parities: tuple, x: dict, y: dict) -> dict:
    sign = field.one
    if mat_parity(parities, x) and mat_parity(parities, y):
        sign = field.neg(field.one)
    return linalg.axpy(field, mat_mul(field, x, y), field.neg(sign), mat_mul(field, y, x))


class MatrixSuperalgebra(presentation.Presentation):
    """Span of supermatrices, optionally with the cocycle center z and I_0."""

    def __init__(self, field, parities, matrices, name: str, shape: int | None = None,
                 central: bool = False, outer: dict | None = None):
        self.field = field
        self.parities = tuple(parities)
        self.size = len(self.parities)
        self.matrices = [dict(m) for m in matrices if m]
        self.name = name
        self.shape = shape
        self.central = central
        self.outer = outer
        self._echelon = linalg.Echelon(field)
        for k, m in enumerate(self.matrices):
            if not self._echelon.add(self._flat(m), k):
                raise InternalInconsistency(f"{name}: basis matrices are linearly dependent")
        self.basis = list(range(len(self.matrices)))
        self._parity = [mat_parity(self.parities, m) for m in self.matrices]
        self.z = self.i0 = None
        if central:
            self.z = len(self.basis)
            self.basis.append(self.z)
            self._parity.append(0)
        if outer is not None:
            self.i0 = len(self.basis)
            self.basis.append(self.i0)
            self._parity.append(0)

    def __repr__(self):
        return f"{self.name} {self.sdim()[0]}|{self.sdim()[1]}"

    def _flat(self, m: dict) -> dict:
        return {r * self.size + c: v for (r, c), v in m.items()}

    def parity_of(self, x) -> int:
        return self._parity[x]

    def grade_of(self, x) -> tuple:
        return (0,)

    def coordinates(self, m: dict) -> dict:
        if not m:
            return {}
        combo = self._echelon.express(self._flat(m))
        if combo is None:
            raise WrongShape(f"{self.name}: matrix outside the span")
        return combo

    def cocycle(self, x: dict, y: dict):
        """F(X, Y) = sum over i<j of C_ij D'_ij + C'_ij D_ij."""
        f, k = self.field, self.shape
        out = f.zero
        for i, j in itertools.combinations(range(k), 2):
            out = f.add(out, f.mul(x.get((i, k + j), f.zero), y.get((k + i, j), f.zero)))
            out = f.add(out, f.mul(y.get((i, k + j), f.zero), x.get((k + i, j), f.zero)))
        return out

    def quadratic(self, x: dict):
        f, k = self.field, self.shape
        out = f.zero
        for i, j in itertools.combinations(range(k), 2):
            out = f.add(out, f.mul(x.get((i, k + j), f.zero), x.get((k + i, j), f.zero)))
        return out

    def bracket_basis(self, x, y) -> dict:
        f = self.field
        if self.central and self.z in (x, y):
            return {}
        if self.i0 is not None and x == self.i0:
            if y == self.i0:
                return {}
            return self.coordinates(supercommutator(f, self.parities, self.outer, self.matrices[y]))
        if self.i0 is not None and y == self.i0:
            return linalg.scale(f, f.neg(f.one), self.bracket_basis(y, x))
        mx, my = self.matrices[x], self.matrices[y]
        out = dict(self.coordinates(supercommutator(f, self.parities, mx, my)))
        if self.central:
            linalg.axpy(f, out, self.cocycle(mx, my), {self.z: f.one})
        return out

    def square_basis(self, x) -> dict:
        f = self.field
        m = self.matrices[x]
        out = dict(self.coordinates(mat_mul(f, m, m)))
        if self.central:
            linalg.axpy(f, out, self.quadratic(m), {self.z: f.one})
        return out

    def subalgebra(self, space: presentation.Subspace, name: str) -> "MatrixSuperalgebra":
        if self.central or self.outer is not None:
            raise WrongShape(f"{self.name}: only plain matrix algebras have matrix subalgebras")
        f = self.field
        matrices = [linalg.combine(f, ((c, self.matrices[k]) for k, c in v.items())) for v in space.vectors]
        return MatrixSuperalgebra(f, self.parities, matrices, name, self.shape)


def elementary(r: int, c: int, field) -> dict:
    return {(r, c): field.one}


def _check_p2(p: int, family: str):
    if p != 2:
        raise InvalidParams(f"{family} is realized at p = 2 only")


def _pi(size: int, field) -> list[list]:
    half = size // 2
    out = [[field.zero] * size for _ in range(size)]
    for i in range(half):
        out[i][half + i] = field.one
        out[half + i][i] = field.one
    return out


def _block_diag(field, *blocks) -> list[list]:
    size = sum(len(b) for b in blocks)
    out = [[field.zero] * size for _ in range(size)]
    offset = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, v in enumerate(row):
                out[offset + i][offset + j] = v
        offset += len(b)
    return out


def _identity(size: int, field) -> list[list]:
    return [[field.one if i == j else field.zero for j in range(size)] for i in range(size)]


def form_algebra(field, parities, form, name: str, shape: int | None = None) -> MatrixSuperalgebra:
    """{X : X B + B X^T = 0} over a field of characteristic 2."""
    size = len(parities)
    f = field
    equations = []
    for u in range(size):
        for v in range(size):
            row = [f.zero] * (size * size)
            for k in range(size):
                if not f.is_zero(form[k][v]):
                    idx = u * size + k
                    row[idx] = f.add(row[idx], form[k][v])
                if not f.is_zero(form[u][k]):
                    idx = v * size + k
                    row[idx] = f.add(row[idx], form[u][k])
            if any(not f.is_zero(x) for x in row):
                equations.append(row)
    matrices = []
    for vec in linalg.nullspace(f, equations, size * size):
        matrices.append({divmod(i, size): x for i, x in enumerate(vec) if not f.is_zero(x)})
    return MatrixSuperalgebra(f, parities, matrices, name, shape)


def build_classical(family: str, params: dict, p: int):
    """Explicit matrix realization of a classical family."""
    field = PrimeField(p)
    f = field
    if family not in FAMILIES:
        raise InvalidParams(f"unknown classical family {family!r}")
    if family in ("gl", "sl", "psl"):
        m, n = int(params.get("m", 0)), int(params.get("n", 0))
        if m + n < 1 or m < 0 or n < 0:
            raise InvalidParams(f"{family}({m}|{n}) needs m + n >= 1")
        parities = (0,) * m + (1,) * n
        size = m + n
        if family == "gl":
            mats = [elementary(r, c, f) for r in range(size) for c in range(size)]
            return MatrixSuperalgebra(f, parities, mats, f"gl({m}|{n})")
        mats = [elementary(r, c, f) for r in range(size) for c in range(size) if r != c]
        strace = [f.one if r < m else f.neg(f.one) for r in range(size)]
        for vec in linalg.nullspace(f, [strace], size):
            mats.append({(r, r): x for r, x in enumerate(vec) if not f.is_zero(x)})
        sl = MatrixSuperalgebra(f, parities, mats, f"sl({m}|{n})")
        if family == "sl":
            return sl
        ident = {(r, r): f.one for r in range(size)}
        if f.is_zero(f.from_int(m - n)):
            scalars = presentation.Subspace(sl, [sl.coordinates(ident)])
            return presentation.quotient(sl, sl.whole(), scalars)
        return sl
    if family == "q":
        n = int(params.get("n", 0))
        if n < 1:
            raise InvalidParams("q(n) needs n >= 1")
        mats = []
        for r in range(n):
            for c in range(n):
                mats.append({(r, c): f.one, (n + r, n + c): f.one})
                mats.append({(r, n + c): f.one, (n + r, c): f.one})
        return MatrixSuperalgebra(f, (0,) * n + (1,) * n, mats, f"q({n})")
    _check_p2(p, family)
    if family == "pe":
        m = int(params.get("m", 0))
        if m < 1:
            raise InvalidParams("pe(m) needs m >= 1")
        return form_algebra(f, (0,) * m + (1,) * m, _pi(2 * m, f), f"pe({m})", shape=m)
    if family in ("o_I", "o_Pi"):
        n = int(params.get("n", 0))
        kind = "oo_II" if family == "o_I" else "oo_PiPi"
        return build_classical(kind, {"a": n, "b": 0}, p)
    a, b = int(params.get("a", 0)), int(params.get("b", 0))
    if a < 0 or b < 0 or a + b < 1:
        raise InvalidParams(f"{family}({a}|{b}) needs a + b >= 1")
    if family == "oo_II":
        return form_algebra(f, (0,) * a + (1,) * b, _identity(a + b, f), f"oo_II({a}|{b})")
    if family == "oo_IPi":
        if b % 2:
            raise InvalidParams("oo_IPi(a|b) needs b even")
        form = _block_diag(f, _identity(a, f), _pi(b, f))
        return form_algebra(f, (0,) * a + (1,) * b, form, f"oo_IPi({a}|{b})")
    if a % 2 or b % 2:
        raise InvalidParams("oo_PiPi(a|b) needs a and b even")
    kev, kod = a // 2, b // 2
    parities = (0,) * kev + (1,) * kod + (0,) * kev + (1,) * kod
    return form_algebra(f, parities, _pi(a + b, f), f"oo_PiPi({a}|{b})", shape=kev + kod)


def derived_algebra(x: MatrixSuperalgebra, i: int = 1) -> MatrixSuperalgebra:
    space = x.whole()
    for _ in range(i):
        space = presentation.derived(x, space)
    return x.subalgebra(space, f"{x.name}^({i})")


def central_extend(x: MatrixSuperalgebra) -> MatrixSuperalgebra:
    """The central extension by the cocycle F on the (A C; D A^T) shape."""
    if not isinstance(x, MatrixSuperalgebra) or x.shape is None or x.central or x.outer is not None:
        raise WrongShape(f"{x!r} is not an oo_PiPi or pe derived algebra")
    ext = MatrixSuperalgebra(x.field, x.parities, x.matrices, f"{x.name}c", x.shape, central=True)
    _check_cocycle(ext)
    if all(ext.field.is_zero(ext.cocycle(u, v)) for u in ext.matrices for v in ext.matrices):
        raise WrongShape(f"the cocycle vanishes on {x.name}")
    return ext


def _check_cocycle(ext: MatrixSuperalgebra):
    f = ext.field
    mats = ext.matrices[:COCYCLE_SAMPLE]
    for u, v, w in itertools.combinations(mats, 3):
        total = f.zero
        for a, b, c in ((u, v, w), (v, w, u), (w, u, v)):
            total = f.add(total, ext.cocycle(supercommutator(f, ext.parities, a, b), c))
        if not f.is_zero(total):
            raise InternalInconsistency(f"{ext.name}: cocycle identity fails")


def adjoin_I0(x: MatrixSuperalgebra) -> MatrixSuperalgebra:
    """Semidirect sum with K I_0, I_0 = diag(1_k, 0_k)."""
    if not isinstance(x, MatrixSuperalgebra) or not x.central or x.outer is not None:
        raise WrongShape(f"{x!r} is not a central extension")
    f = x.field
    outer = {(r, r): f.one for r in range(x.shape)}
    out = MatrixSuperalgebra(f, x.parities, x.matrices, f"{x.name}+I0", x.shape, central=True, outer=outer)
    for y in range(len(x.matrices)):
        out.bracket_basis(out.i0, y)
    return out


@dataclass
class FormClass:
    tag: str
    transform: list

    def representative(self, field, size: int) -> list[list]:
        return _identity(size, field) if self.tag == "unit" else _pi(size, field)


def _bilinear(field, gram, u, v):
    out = field.zero
    for i, a in enumerate(u):
        if field.is_zero(a):
            continue
        for j, b in enumerate(v):
            if not field.is_zero(b):
                out = field.add(out, field.mul(field.mul(a, gram[i][j]), b))
    return out


def _sqrt(field, x):
    order = field.p ** getattr(field, "k", 1)
    return field.pow(x, order // 2)


def _axpy_dense(field, u, c, v):
    return [field.add(a, field.mul(c, b)) for a, b in zip(u, v)]


def classify_form(gram, field=None) -> FormClass:
    """Congruence class of a symmetric nondegenerate form in characteristic 2."""
    f = field or PrimeField(2)
    if f.p != 2:
        raise InvalidParams("form classification is implemented for characteristic 2")
    n = len(gram)
    gram = [[f.from_int(x) if isinstance(x, int) else x for x in row] for row in gram]
    if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(n)):
        raise InvalidParams("the Gram matrix is not symmetric")
    if linalg.rank(f, gram) < n:
        raise Degenerate("the form is degenerate")
    remaining = [[f.one if i == j else f.zero for j in range(n)] for i in range(n)]
    ortho, hyper = [], []
    while remaining:
        w = next((v for v in remaining if not f.is_zero(_bilinear(f, gram, v, v))), None)
        if w is not None:
            remaining.remove(w)
            v = [f.mul(f.inv(_sqrt(f, _bilinear(f, gram, w, w))), x) for x in w]
            ortho.append(v)
            remaining = [_axpy_dense(f, u, f.neg(_bilinear(f, gram, u, v)), v) for u in remaining]
            continue
        e = remaining.pop(0)
        partner = next((u for u in remaining if not f.is_zero(_bilinear(f, gram, e, u))), None)
        if partner is None:
            raise Degenerate("the form is degenerate")
        remaining.remove(partner)
        g = [f.mul(f.inv(_bilinear(f, gram, e, partner)), x) for x in partner]
        hyper.append((e, g))
        remaining = [
            _axpy_dense(f, _axpy_dense(f, u, f.neg(_bilinear(f, gram, u, g)), e), f.neg(_bilinear(f, gram, u, e)), g)
            for u in remaining
        ]
    if not ortho:
        transform = [e for e, _ in hyper] + [g for _, g in hyper]
        return FormClass("pi", transform)
    u = ortho.pop()
    for e, g in hyper:
        v1 = [f.add(a, b) for a, b in zip(u, e)]
        v2 = [f.add(a, b) for a, b in zip(u, g)]
        u = [f.add(a, b) for a, b in zip(v1, g)]
        ortho.extend([v1, v2])
    ortho.append(u)
    return FormClass("unit", ortho)


def congruent(field, m: list[list], gram: list[list]) -> list[list]:
    """M G M^T."""
    mg = [[_dot(field, row, col) for col in zip(*gram)] for row in m]
    return [[_dot(field, row, other) for other in m] for row in mg]


def _dot(field, u, v):
    out = field.zero
    for a, b in zip(u, v):
        out = field.add(out, field.mul(a, b))
    return out


def expected_sdim(family: str, params: dict, simple: bool = False) -> tuple[int, int]:
    """Closed superdimension formulas of the classical relatives."""
    sign = -1 if simple else 1
    try:
        if family == "oc_I0":
            k = int(params["k"])
            return (2 * k * k - k + sign * (2 if k % 2 == 0 else 1), 0)
        if family == "o1":
            k = int(params["k"])
            return (2 * k * k + k, 0)
        if family == "oo1":
            kev, kod = int(params["k_ev"]), int(params["k_od"])
            return (2 * kev * kev + kev + 2 * kod * kod + kod, 2 * kod * (2 * kev + 1))
        if family == "ooc_I0":
            kev, kod = int(params["k_ev"]), int(params["k_od"])
            shift = 2 if (kev + kod) % 2 == 0 else 1
            return (2 * kev * kev - kev + 2 * kod * kod - kod + sign * shift, 4 * kev * kod)
        if family == "pec_I0":
            m = int(params["m"])
            return (m * m + sign * (2 if m % 2 == 0 else 1), m * m - m)
        if family in ("oo_II", "oo_IPi", "oo_PiPi"):
            a, b = int(params["a"]), int(params["b"])
            level = int(params.get("i", 0))
            even, odd = a * (a + 1) // 2 + b * (b + 1) // 2, a * b
            if level == 0:
                return even, odd
            if level == 1 or family == "oo_PiPi":
                drop = {"oo_II": 1, "oo_IPi": a, "oo_PiPi": a + b}[family]
                return even - drop - (1 if level == 2 else 0), odd
            raise InvalidParams(f"no closed formula for {family}^({level})")
        if family == "gl":
            m, n = int(params["m"]), int(params["n"])
            return m * m + n * n, 2 * m * n
        if family == "pe":
            m = int(params["m"])
            return m * m, m * m + m
    except KeyError as exc:
        raise InvalidParams(f"{family} needs parameter {exc}") from exc
    raise InvalidParams(f"unknown family {family!r}")
