"""Search for finite dimensional g(A): candidates, builds and orbits."""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

import networkx as nx

from .builder import FINITE, Caps, build, simple_subquotient
from .cartan import (
    EVEN,
    CartanSpec,
    adjacency_graph,
    canonical_form,
    corank,
    is_indecomposable,
    normalize,
    specialize_spec,
    symmetrizer,
)
from .conf import engine_settings
from .errors import ForgeError, InvalidParams, PoleAtValue
from .presentation import is_simple
from .reflections import enumerate_orbit
from .scalars import ExtensionField, field_for

logger = logging.getLogger(__name__)

EXHAUSTIVE = "exhaustive"
ENLARGE = "enlarge"
MAX_EXHAUSTIVE = 5
PARAMETER_POOL = ("a", "a+1")
ENLARGE_SLOTS = 4


@dataclass(frozen=True)
class SearchConfig:
    n: int
    p: int
    parities: tuple | None = None
    parametric: bool = False
    caps: Caps = dc_field(default_factory=Caps)
    use_submatrix_filter: bool = False
    mode: str = EXHAUSTIVE
    threads: int | None = None

    def parity_patterns(self) -> list[tuple]:
        if self.parities is not None:
            return [tuple(x) for x in self.parities]
        return [(1,) * k + (0,) * (self.n - k) for k in range(self.n + 1)]

    def validate(self):
        if self.n < 1 or (self.mode == EXHAUSTIVE and self.n > MAX_EXHAUSTIVE):
            raise InvalidParams(f"exhaustive search supports 1 <= n <= {MAX_EXHAUSTIVE}, got {self.n}")
        if self.mode not in (EXHAUSTIVE, ENLARGE):
            raise InvalidParams(f"unknown mode {self.mode!r}")
        if any(len(pattern) != self.n for pattern in self.parity_patterns()):
            raise InvalidParams("parity pattern length must equal n")


@dataclass
class OrbitSummary:
    members: list
    sdim: tuple
    corank: int
    core_sdim: tuple
    core_simple: bool
    candidates: int = 0

    def to_json(self) -> dict:
        return {
            "members": [m.to_json() for m in self.members],
            "sdim": {"even": self.sdim[0], "odd": self.sdim[1]},
            "corank": self.corank,
            "simple_core": {"even": self.core_sdim[0], "odd": self.core_sdim[1]},
            "core_simple": self.core_simple,
            "candidates": self.candidates,
        }


@dataclass
class ClassificationReport:
    survivors: list = dc_field(default_factory=list)
    capped: list = dc_field(default_factory=list)
    eliminated: Counter = dc_field(default_factory=Counter)
    caps: Caps = dc_field(default_factory=Caps)

    def to_json(self) -> dict:
        return {
            "caps": {"dim_cap": self.caps.dim_cap, "height_cap": self.caps.height_cap},
            "survivors": [s.to_json() for s in self.survivors],
            "capped": [
                {"spec": spec.to_json(), "sdim": {"even": sdim[0], "odd": sdim[1]}, "status": "conjecturally infinite"}
                for spec, sdim in self.capped
            ],
            "eliminated": dict(sorted(self.eliminated.items())),
        }


def _diagonal_choices(field, parity: int) -> list:
    if parity == EVEN:
        return [field.from_int(2) if field.p > 2 else field.one, field.zero]
    return [field.one, field.zero]


def _off_diagonal_pool(field, parametric: bool) -> list:
    pool = [field.from_int(v) for v in range(1, field.p)]
    if parametric:
        pool += [field.parse(text) for text in PARAMETER_POOL]
    return pool


def _filter(spec: CartanSpec, eliminated: Counter, infinite: set | None) -> bool:
    if not is_indecomposable(spec):
        eliminated["decomposable"] += 1
        return False
    if spec.n >= 3 and symmetrizer(spec) is None:
        eliminated["non_symmetrizable"] += 1
        return False
    if any(len(cycle) > 3 for cycle in nx.cycle_basis(adjacency_graph(spec))):
        eliminated["long_cycle"] += 1
        return False
    if infinite:
        for drop in range(spec.n):
            keep = [i for i in range(spec.n) if i != drop]
            rows = [[spec[i, j] for j in keep] for i in keep]
            sub = normalize(spec.field, rows, tuple(spec.parity[i] for i in keep))
            if is_indecomposable(sub) and canonical_form(sub) in infinite:
                eliminated["infinite_submatrix"] += 1
                return False
    return True


def generate_candidates(cfg: SearchConfig, eliminated: Counter | None = None, infinite: set | None = None):
    """Normalized, indecomposable, pairwise inequivalent candidates."""
    cfg.validate()
    eliminated = eliminated if eliminated is not None else Counter()
    field = field_for(cfg.p, cfg.parametric)
    pool = _off_diagonal_pool(field, cfg.parametric)
    pairs = list(itertools.combinations(range(cfg.n), 2))
    pair_choices = [(field.zero, field.zero)] + list(itertools.product(pool, pool))
    seen = set()
    for parity in cfg.parity_patterns():
        diagonals = [_diagonal_choices(field, q) for q in parity]
        for diag in itertools.product(*diagonals):
            for entries in itertools.product(pair_choices, repeat=len(pairs)):
                rows = [[field.zero] * cfg.n for _ in range(cfg.n)]
                for i in range(cfg.n):
                    rows[i][i] = diag[i]
                for (i, j), (aij, aji) in zip(pairs, entries):
                    rows[i][j], rows[j][i] = aij, aji
                spec = normalize(field, rows, parity)
                canon = canonical_form(spec)
                if canon in seen:
                    eliminated["equivalent"] += 1
                    continue
                seen.add(canon)
                if _filter(spec, eliminated, infinite if cfg.use_submatrix_filter else None):
                    yield canon


def enlarge_candidates(cfg: SearchConfig, seeds: list, eliminated: Counter | None = None):
    """Size n+1 matrices from size-n seeds by adding one sparsely connected node."""
    eliminated = eliminated if eliminated is not None else Counter()
    seen = set()
    for seed in seeds:
        if sum(seed.parity) > 1:
            continue
        field = seed.field
        n = seed.n
        pool = _off_diagonal_pool(field, cfg.parametric)
        for parity in (0, 1):
            for diag in _diagonal_choices(field, parity):
                for width in range(1, ENLARGE_SLOTS // 2 + 1):
                    for nodes in itertools.combinations(range(n), width):
                        for values in itertools.product(itertools.product(pool, pool), repeat=width):
                            rows = [list(r) + [field.zero] for r in seed.entries]
                            rows.append([field.zero] * (n + 1))
                            rows[n][n] = diag
                            for node, (a, b) in zip(nodes, values):
                                rows[n][node], rows[node][n] = a, b
                            for i in range(n):
                                rows[i][i] = seed[i, i]
                            spec = normalize(field, rows, tuple(seed.parity) + (parity,))
                            canon = canonical_form(spec)
                            if canon in seen:
                                eliminated["equivalent"] += 1
                                continue
                            seen.add(canon)
                            if _filter(spec, eliminated, None):
                                yield canon


def _summary(spec: CartanSpec, caps: Caps) -> tuple:
    b = build(spec, caps)
    return spec, b.verdict, b.sdim()


def _map_builds(specs: list, caps: Caps, threads: int) -> list:
    if threads <= 1 or len(specs) < 2:
        return [_summary(s, caps) for s in specs]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_summary, specs, itertools.repeat(caps), chunksize=8))


def classify_run(cfg: SearchConfig) -> ClassificationReport:
    cfg.validate()
    threads = cfg.threads or engine_settings().threads
    report = ClassificationReport(caps=cfg.caps)
    if cfg.mode == ENLARGE:
        smaller = classify_run(SearchConfig(cfg.n - 1, cfg.p, None, cfg.parametric, cfg.caps, False, EXHAUSTIVE, threads))
        seeds = [m for s in smaller.survivors for m in s.members]
        candidates = list(enlarge_candidates(cfg, seeds, report.eliminated))
    else:
        infinite = None
        if cfg.use_submatrix_filter and cfg.n > 1:
            smaller = classify_run(SearchConfig(cfg.n - 1, cfg.p, None, cfg.parametric, cfg.caps, False, EXHAUSTIVE, threads))
            infinite = {canonical_form(spec) for spec, _ in smaller.capped}
        candidates = list(generate_candidates(cfg, report.eliminated, infinite))
    logger.info("classify n=%d p=%d: %d candidates", cfg.n, cfg.p, len(candidates))
    finite = []
    for spec, verdict, sdim in _map_builds(candidates, cfg.caps, threads):
        if verdict == FINITE:
            finite.append(spec)
        else:
            report.capped.append((spec, sdim))
    assigned = set()
    for spec in finite:
        if spec in assigned:
            continue
        b = build(spec, cfg.caps)
        try:
            orbit = enumerate_orbit(spec, cfg.caps, verify_sdim=False, prebuilt=b)
        except ForgeError as exc:
            logger.warning("orbit of %s failed: %s", spec, exc)
            orbit = None
        members = orbit.members if orbit else [spec]
        member_set = set(members)
        hits = [s for s in finite if s in member_set]
        assigned.update(hits)
        assigned.add(spec)
        core = simple_subquotient(b)
        report.survivors.append(
            OrbitSummary(members, b.sdim(), corank(spec), core.sdim, is_simple(core.algebra), len(hits) or 1)
        )
    report.survivors.sort(key=lambda s: (s.sdim, [str(m) for m in s.members]))
    logger.info("classify n=%d p=%d: %d orbits, %d capped", cfg.n, cfg.p, len(report.survivors), len(report.capped))
    return report


def sample_parameter(spec: CartanSpec, k: int = 2, caps: Caps | None = None) -> dict:
    """Builds at every a in GF(p^k) outside {0, 1}; values whose sdim differs from the generic one."""
    if not spec.parametric:
        raise InvalidParams("sample_parameter needs a parametric spec")
    caps = caps or Caps.default()
    generic = build(spec, caps).sdim()
    target = ExtensionField(spec.p, k)
    special = {}
    for value in target.elements():
        if value in (0, 1):
            continue
        try:
            specialized = specialize_spec(spec, value, target)
        except PoleAtValue:
            special[value] = "pole"
            continue
        except ForgeError as exc:
            special[value] = str(exc)
            continue
        sdim = build(specialized, caps).sdim()
        if sdim != generic:
            special[value] = sdim
    logger.info("sampled %s over GF(%d^%d): %d special values", spec, spec.p, k, len(special))
    return {"generic": generic, "special": special}
