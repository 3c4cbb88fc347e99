"""JSON documents shared by the management commands and the API views."""

from __future__ import annotations

from . import presentation
from .builder import FINITE, AlgebraBuild, center, odd_highest_weights, root_system, simple_subquotient
from .cartan import corank


def sdim_json(pair) -> dict:
    return {"even": pair[0], "odd": pair[1]}


def _vector(algebra, v: dict) -> list:
    name = algebra.name if callable(getattr(algebra, "name", None)) else str
    return [[name(x), algebra.field.to_text(c)] for x, c in sorted(v.items())]


def structure_report(algebra: presentation.Presentation) -> dict:
    """Derived series, center and simple core of any finite presentation."""
    series = presentation.derived_series(algebra)
    cent = center(algebra)
    if isinstance(algebra, AlgebraBuild):
        core = simple_subquotient(algebra).algebra
    else:
        core = presentation.quotient(algebra, series[-1], presentation.center(algebra, series[-1]))
    return {
        "derived": [sdim_json(s.sdim()) for s in series],
        "center": len(cent),
        "simple_core": sdim_json(core.sdim()),
        "core_simple": presentation.is_simple(core),
    }


def build_report(b: AlgebraBuild, structure: bool = True, audit: bool = False) -> dict:
    report = {
        "spec": b.spec.to_json(),
        "verdict": b.verdict,
        "sdim": sdim_json(b.sdim()),
        "corank": corank(b.spec),
        "caps": {"dim_cap": b.caps.dim_cap, "height_cap": b.caps.height_cap},
    }
    if b.verdict != FINITE:
        report["heights"] = [len(level) for level in b.heights]
        return report
    mult, simple = root_system(b)
    report["roots"] = [
        {"coords": list(r), "even": even, "odd": odd} for r, (even, odd) in mult.items() if sum(r) > 0
    ]
    report["simple_roots"] = [list(r) for r in simple]
    if structure:
        report.update(structure_report(b))
        f = b.field
        report["hw_odd"] = [
            {"root": list(root), "weight": [f.to_text(c) for c in weight], "vector": _vector(b, v)}
            for v, root, weight in odd_highest_weights(b)
        ]
    if audit:
        report["basis"] = [
            {"id": e.id, "name": b.name(e.id), "root": list(e.root), "parity": e.parity, "word": e.word}
            for e in b.elements()
        ]
    return report


def presentation_report(algebra: presentation.Presentation, name: str | None = None) -> dict:
    report = {"sdim": sdim_json(algebra.sdim())}
    if name:
        report["name"] = name
    report.update(structure_report(algebra))
    return report
