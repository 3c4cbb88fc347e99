"""Dynkin diagrams of Cartan matrices, their symmetries and fixed points."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

import networkx as nx
from networkx.algorithms import isomorphism

from . import linalg, presentation
from .builder import FINITE, AlgebraBuild, build
from .cartan import CartanSpec, Mark, normalize
from .errors import CapExceeded, ExtensionFailure, NotASymmetry

logger = logging.getLogger(__name__)


class NodeKind(str, Enum):
    WHITE = "white"
    AST = "ast"
    BLACK = "black"
    GRAY = "gray"
    DOTTED = "dotted"


NODE_TOKENS = {
    NodeKind.WHITE: "O",
    NodeKind.AST: "*",
    NodeKind.BLACK: "X",
    NodeKind.GRAY: "G",
    NodeKind.DOTTED: "D",
}

NODE_STYLE = {
    NodeKind.WHITE: "shape=circle",
    NodeKind.AST: "shape=doublecircle",
    NodeKind.BLACK: "shape=circle, style=filled, fillcolor=black",
    NodeKind.GRAY: "shape=circle, style=filled, fillcolor=gray",
    NodeKind.DOTTED: "shape=point",
}

_KINDS = {
    Mark.TWO: NodeKind.WHITE,
    Mark.OD: NodeKind.AST,
    Mark.ONE: NodeKind.BLACK,
    Mark.ZERO: NodeKind.GRAY,
    Mark.EV: NodeKind.DOTTED,
}


@dataclass(frozen=True)
class Edge:
    i: int
    j: int
    forward: object
    backward: object
    multiplicity: int | None = None
    arrow: str = "-"
    label: str | None = None

    def token(self) -> str:
        if self.label is not None:
            return f"={self.label}="
        return f"-{self.multiplicity}{'-' if self.arrow == '-' else self.arrow}"


@dataclass(frozen=True)
class DynkinDiagram:
    nodes: tuple
    edges: tuple

    def is_chain(self) -> bool:
        return {(e.i, e.j) for e in self.edges} == {(k, k + 1) for k in range(len(self.nodes) - 1)}


def _lift(field, x) -> int | None:
    """Non-positive integer representative of a constant entry."""
    value = field.integer_value(x)
    if value is None:
        return None
    return value - field.p if value else 0


def to_diagram(spec: CartanSpec) -> DynkinDiagram:
    f = spec.field
    nodes = tuple(_KINDS[m] for m in spec.marks)
    edges = []
    for i in range(spec.n):
        for j in range(i + 1, spec.n):
            aij, aji = spec[i, j], spec[j, i]
            if f.is_zero(aij) and f.is_zero(aji):
                continue
            li, lj = _lift(f, aij), _lift(f, aji)
            if li is not None and lj is not None and -1 in (li, lj) and 0 not in (li, lj):
                mult = max(-li, -lj)
                arrow = ">" if -li > -lj else "<" if -li < -lj else "-"
                edges.append(Edge(i, j, aij, aji, mult, arrow))
            elif spec.p == 2 and aij == f.one and aji == f.one:
                edges.append(Edge(i, j, aij, aji, 1))
            else:
                label = f.to_text(aij) if aij == aji else f"{f.to_text(aij)},{f.to_text(aji)}"
                edges.append(Edge(i, j, aij, aji, label=label))
    return DynkinDiagram(nodes, tuple(edges))


def serialize(diagram: DynkinDiagram, format: str = "text") -> str:
    if format == "dot":
        return _to_dot(diagram)
    tokens = [NODE_TOKENS[k] for k in diagram.nodes]
    if diagram.is_chain() or len(tokens) == 1:
        out = tokens[0]
        for edge, token in zip(diagram.edges, tokens[1:]):
            out += edge.token() + token
        return out
    edges = " ".join(f"{e.i + 1}{e.token()}{e.j + 1}" for e in diagram.edges)
    return f"{' '.join(tokens)}; {edges}".rstrip("; ")


def _to_dot(diagram: DynkinDiagram) -> str:
    lines = ["digraph dynkin {", "\tgraph [rankdir=LR]"]
    for k, kind in enumerate(diagram.nodes):
        lines.append(f'\t"{k + 1}" [label="{k + 1}", {NODE_STYLE[kind]}];')
    for e in diagram.edges:
        if e.label is not None:
            attrs = f'label="{e.label}", dir=none'
        else:
            direction = {">": "forward", "<": "back", "-": "none"}[e.arrow]
            attrs = f'label="{e.multiplicity}", dir={direction}'
        lines.append(f'\t"{e.i + 1}" -> "{e.j + 1}" [{attrs}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _matrix_graph(spec: CartanSpec) -> nx.DiGraph:
    g = nx.DiGraph()
    for i in range(spec.n):
        g.add_node(i, mark=spec.marks[i], parity=spec.parity[i])
    for i in range(spec.n):
        for j in range(spec.n):
            if i != j and not spec.field.is_zero(spec[i, j]):
                g.add_edge(i, j, value=spec[i, j])
    return g


def diagram_symmetries(spec: CartanSpec) -> list[tuple]:
    """Non-identity permutations s with A[s(i)][s(j)] = A[i][j] and equal parities."""
    g = _matrix_graph(spec)
    matcher = isomorphism.DiGraphMatcher(
        g,
        g,
        node_match=lambda a, b: a["mark"] == b["mark"] and a["parity"] == b["parity"],
        edge_match=lambda a, b: a["value"] == b["value"],
    )
    identity = tuple(range(spec.n))
    found = {tuple(m[i] for i in range(spec.n)) for m in matcher.isomorphisms_iter()}
    found.discard(identity)
    return sorted(found)


def is_symmetry(spec: CartanSpec, sigma) -> bool:
    n = spec.n
    if sorted(sigma) != list(range(n)):
        return False
    return all(spec.parity[sigma[i]] == spec.parity[i] for i in range(n)) and all(
        spec[sigma[i], sigma[j]] == spec[i, j] for i in range(n) for j in range(n)
    )


def node_orbits(sigma) -> list[tuple]:
    """Cycles of sigma, each starting at its smallest node."""
    seen, out = set(), []
    for i in range(len(sigma)):
        if i in seen:
            continue
        cycle = [i]
        while sigma[cycle[-1]] != i:
            cycle.append(sigma[cycle[-1]])
        seen.update(cycle)
        out.append(tuple(cycle))
    return out


def folded_spec(spec: CartanSpec, sigma) -> CartanSpec:
    """N with N[I][J] = sum of A[i][j] over j in J, for i the first node of I.

    The zero pattern of N may be one-sided, so it is normalized with
    symmetric_zeros=False.
    """
    f = spec.field
    orbits = node_orbits(sigma)
    rows = []
    for orbit in orbits:
        i = orbit[0]
        row = []
        for other in orbits:
            total = f.zero
            for j in other:
                total = f.add(total, spec[i, j])
            row.append(total)
        rows.append(row)
    return normalize(f, rows, tuple(spec.parity[o[0]] for o in orbits), symmetric_zeros=False)


@dataclass
class FixedPoints:
    """Fixed points of a diagram automorphism.

    ``algebra`` is generated by the sums of Chevalley generators over the
    orbits of sigma together with the fixed part of the Cartan
    subalgebra; this is the algebra to compare with g(N) for the folded
    matrix N. ``invariants`` is the full kernel of (phi - id), which at
    p = 2 is larger.
    """

    algebra: presentation.Induced
    invariants: presentation.Induced
    automorphism: dict
    order: int
    folded: CartanSpec

    def sdim(self) -> tuple[int, int]:
        return self.algebra.sdim()

    def folded_sdim(self, caps=None) -> tuple[int, int] | None:
        """sdim of g(N), or None when it exceeds the caps."""
        other = build(self.folded, caps)
        return other.sdim() if other.verdict == FINITE else None


class DiagramAutomorphism:
    """The automorphism of g(A) induced by a diagram symmetry."""

    def __init__(self, b: AlgebraBuild, sigma: tuple):
        self.b = b
        self.sigma = tuple(sigma)
        self.images: dict[int, dict] = {}
        self._cartan()
        for x in b.positives:
            self.images[x] = self._positive(x)
            self.images[-x] = b.omega(self.images[x])

    def _cartan(self):
        b, f, sigma = self.b, self.b.field, self.sigma
        n = b.n
        for i in range(n):
            self.images[b.h(i)] = {b.h(sigma[i]): f.one}
        inverse = {s: i for i, s in enumerate(sigma)}
        units = [tuple(1 if k == m else 0 for k in range(n)) for m in range(n)]
        matrix = [list(b.weight(units[m])) for m in range(n)]
        for r, row in enumerate(b.B):
            solution = linalg.solve(f, matrix, [row[inverse[m]] for m in range(n)])
            if solution is None:
                raise ExtensionFailure(f"no grading element matches d{r + 1} under {sigma}")
            self.images[b.d(r)] = {x: c for x, c in enumerate(solution) if not f.is_zero(c)}
        if linalg.rank(f, [[v.get(x, f.zero) for x in range(b.ncartan)] for v in self._cartan_images()]) < b.ncartan:
            raise ExtensionFailure(f"{sigma} does not act invertibly on the Cartan subalgebra")

    def _cartan_images(self):
        return [self.images[x] for x in range(self.b.ncartan)]

    def _positive(self, x: int) -> dict:
        b, f = self.b, self.b.field
        defn = b.defn[x]
        if defn[0] == "gen":
            return {b.e(self.sigma[defn[1]]): f.one}
        if defn[0] == "br":
            return b.bracket({b.e(self.sigma[defn[1]]): f.one}, self.images[defn[2]])
        return b.square(self.images[defn[1]])

    def __call__(self, v: dict) -> dict:
        f = self.b.field
        return linalg.combine(f, ((c, self.images[x]) for x, c in v.items()))

    def check(self, partners=None):
        b = self.b
        partners = partners if partners is not None else b.generators()
        for x in partners:
            for y in b.basis:
                u = b.unit(y)
                if self(b.bracket(x, u)) != b.bracket(self(x), self(u)):
                    raise ExtensionFailure(f"{self.sigma} does not preserve [{x}, {b.name(y)}]")

    def order(self) -> int:
        k, current = 1, self.sigma
        while current != tuple(range(len(current))):
            current = tuple(self.sigma[i] for i in current)
            k += 1
        return k


def _invariants(b: AlgebraBuild, sigma: tuple, phi: DiagramAutomorphism) -> list[dict]:
    f = b.field
    blocks: dict[tuple, list] = {}
    for x in b.basis:
        grade = b.grade_of(x)
        orbit = {grade}
        while True:
            nxt = {_permute_grade(g, sigma) for g in orbit} | orbit
            if nxt == orbit:
                break
            orbit = nxt
        blocks.setdefault(tuple(sorted(orbit)), []).append(x)
    fixed = []
    for key in sorted(blocks):
        ids = blocks[key]
        position = {x: k for k, x in enumerate(ids)}
        matrix = [[f.zero] * len(ids) for _ in ids]
        for col, x in enumerate(ids):
            moved = linalg.sub(f, phi({x: f.one}), {x: f.one})
            for y, c in moved.items():
                matrix[position[y]][col] = c
        for vec in linalg.nullspace(f, matrix, len(ids)):
            fixed.append({ids[k]: c for k, c in enumerate(vec) if not f.is_zero(c)})
    return fixed


def fixed_subalgebra(b: AlgebraBuild, sigma) -> FixedPoints:
    """Fixed points of the automorphism phi induced by sigma."""
    if b.verdict != FINITE:
        raise CapExceeded(f"{b.spec} did not build to a finite algebra")
    sigma = tuple(sigma)
    if not is_symmetry(b.spec, sigma):
        raise NotASymmetry(f"{sigma} is not a symmetry of {b.spec}")
    phi = DiagramAutomorphism(b, sigma)
    phi.check()
    f = b.field
    kernel = _invariants(b, sigma, phi)
    generators = [v for v in kernel if all(b.is_cartan(x) for x in v)]
    for orbit in node_orbits(sigma):
        generators.append({b.e(i): f.one for i in orbit})
        generators.append({b.f(i): f.one for i in orbit})
    span = presentation.generated_subalgebra(b, generators)
    algebra = presentation.Induced(b, span.vectors, regrade=_height)
    invariants = presentation.Induced(b, kernel, regrade=_height)
    logger.info(
        "fixed points of %s under %s: generated sdim %s|%s, invariants %s|%s",
        b.spec, sigma, *algebra.sdim(), *invariants.sdim(),
    )
    return FixedPoints(algebra, invariants, phi.images, phi.order(), folded_spec(b.spec, sigma))


def _height(grade: tuple) -> tuple:
    return (sum(grade),)


def _permute_grade(grade: tuple, sigma: tuple) -> tuple:
    out = [0] * len(grade)
    for i, c in enumerate(grade):
        out[sigma[i]] = c
    return tuple(out)
