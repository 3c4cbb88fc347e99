"""Expectation tables: known algebras with their sdims, orbit sizes and module data."""

from __future__ import annotations

import itertools
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .builder import FINITE, Caps, build, odd_highest_weights, simple_subquotient
from .cartan import CartanSpec, make_spec, parse_parity
from .conf import engine_settings
from .errors import ExpectationFileInvalid, ForgeError, ParseError
from .reflections import enumerate_orbit

logger = logging.getLogger(__name__)

SUPPORTED_VERSION = 1


@dataclass(frozen=True)
class Expectation:
    family: str
    p: int
    matrix: tuple
    parity: str
    sdim: tuple
    source: str
    core_sdim: tuple | None = None
    orbit: int | None = None
    orbit_ordered: int | None = None
    highest_weights: int | None = None
    slow: bool = False

    def spec(self) -> CartanSpec:
        return make_spec(self.p, [list(r) for r in self.matrix], self.parity)


@dataclass
class CheckResult:
    family: str
    p: int
    passed: bool
    failures: list
    observed: dict
    source: str

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "p": self.p,
            "passed": self.passed,
            "failures": self.failures,
            "observed": self.observed,
            "source": self.source,
        }


def _simply_laced(p: int, edges, parity: str) -> list[list[str]]:
    """Matrix of a simply-laced diagram: -1 on edges, 2 (or ev) on even nodes, 0 on odd ones."""
    bits = parse_parity(parity)
    n = len(bits)
    even = "2" if p > 2 else "ev"
    rows = [["0"] * n for _ in range(n)]
    for i, bit in enumerate(bits):
        rows[i][i] = "0" if bit else even
    for a, b in edges:
        if not (1 <= a <= n and 1 <= b <= n) or a == b:
            raise ExpectationFileInvalid(f"edge {a}-{b} outside a diagram with {n} nodes")
        rows[a - 1][b - 1] = rows[b - 1][a - 1] = "-1"
    return rows


def _pair(value, name: str, family: str) -> tuple | None:
    if value is None:
        return None
    if not isinstance(value, list) or len(value) != 2 or not all(isinstance(v, int) for v in value):
        raise ExpectationFileInvalid(f"{family}: {name} must be a pair of integers")
    return tuple(value)


def _entry(raw: dict) -> Expectation:
    try:
        family = raw["family"]
        p = int(raw["p"])
        parity = str(raw["parity"])
        if "matrix" in raw:
            matrix = raw["matrix"]
        elif "edges" in raw:
            matrix = _simply_laced(p, raw["edges"], parity)
        else:
            raise ExpectationFileInvalid(f"{family}: needs either matrix or edges")
        return Expectation(
            family=family,
            p=p,
            matrix=tuple(tuple(str(c) for c in row) for row in matrix),
            parity=parity,
            sdim=_pair(raw["sdim"], "sdim", family),
            source=raw["source"],
            core_sdim=_pair(raw.get("core_sdim"), "core_sdim", family),
            orbit=raw.get("orbit"),
            orbit_ordered=raw.get("orbit_ordered"),
            highest_weights=raw.get("highest_weights"),
            slow=bool(raw.get("slow", False)),
        )
    except (KeyError, TypeError, ValueError, ParseError) as exc:
        raise ExpectationFileInvalid(f"invalid expectation entry {raw!r}: {exc}") from exc


def load_expectations(path: Path | str | None = None) -> list[Expectation]:
    path = Path(path or engine_settings().expectations)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ExpectationFileInvalid(f"cannot read {path}: {exc}") from exc
    if not isinstance(payload, dict) or payload.get("version") != SUPPORTED_VERSION:
        raise ExpectationFileInvalid(f"{path}: unsupported expectation file version")
    entries = [_entry(raw) for raw in payload.get("entries", [])]
    seen = set()
    for e in entries:
        if (e.family, e.p) in seen:
            raise ExpectationFileInvalid(f"duplicate entry {e.family} at p={e.p}")
        seen.add((e.family, e.p))
    return entries


def select(entries: list[Expectation], family: str | None = None, p: int | None = None,
           include_slow: bool = True) -> list[Expectation]:
    return [
        e for e in entries
        if (family is None or e.family == family)
        and (p is None or e.p == p)
        and (include_slow or not e.slow)
    ]


def check_entry(entry: Expectation, caps: Caps | None = None) -> CheckResult:
    caps = caps or Caps.default()
    failures, observed = [], {}
    try:
        b = build(entry.spec(), caps)
        observed["sdim"] = list(b.sdim())
        if b.verdict != FINITE:
            failures.append(f"build exceeded caps at sdim {b.sdim()}")
        else:
            if b.sdim() != entry.sdim:
                failures.append(f"sdim {b.sdim()} != {entry.sdim}")
            if entry.core_sdim is not None:
                core = simple_subquotient(b).sdim
                observed["core_sdim"] = list(core)
                if core != entry.core_sdim:
                    failures.append(f"simple core {core} != {entry.core_sdim}")
            if entry.orbit is not None or entry.orbit_ordered is not None:
                orbit = enumerate_orbit(b.spec, caps, verify_sdim=False, prebuilt=b)
                observed["orbit"] = len(orbit)
                observed["orbit_ordered"] = orbit.ordered_count
                if entry.orbit is not None and len(orbit) != entry.orbit:
                    failures.append(f"orbit size {len(orbit)} != {entry.orbit}")
                if entry.orbit_ordered is not None and orbit.ordered_count != entry.orbit_ordered:
                    failures.append(f"node-ordered orbit size {orbit.ordered_count} != {entry.orbit_ordered}")
            if entry.highest_weights is not None:
                count = len(odd_highest_weights(b))
                observed["highest_weights"] = count
                if count != entry.highest_weights:
                    failures.append(f"{count} odd highest weight vectors, expected {entry.highest_weights}")
    except ForgeError as exc:
        failures.append(f"{type(exc).__name__}: {exc}")
    result = CheckResult(entry.family, entry.p, not failures, failures, observed, entry.source)
    log = logger.info if result.passed else logger.warning
    log("%s p=%d: %s", entry.family, entry.p, "pass" if result.passed else "; ".join(failures))
    return result


def verify_tables(family: str | None = None, p: int | None = None, include_slow: bool = True,
                  caps: Caps | None = None, path=None) -> list[CheckResult]:
    entries = select(load_expectations(path), family, p, include_slow)
    threads = engine_settings().threads
    if threads <= 1 or len(entries) < 2:
        return [check_entry(e, caps) for e in entries]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(check_entry, entries, itertools.repeat(caps)))
