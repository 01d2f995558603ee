"""Round-by-round family construction with certified pruning."""

from __future__ import annotations

import dataclasses
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from math import factorial
from typing import IO, Sequence

from .graph import (
    BudgetExhausted,
    GraphError,
    Instance,
    colors_of,
    is_path,
    normalize_terminals,
    set_key,
    validate_instance,
)
from .pruning import PruneCertificate, disjoint_case_bound, prune_family
from .reachability import ReachCache, find_path_within

log = logging.getLogger(__name__)

INF = float("inf")


class InvalidInstance(GraphError):
    pass


@dataclasses.dataclass(frozen=True)
class SolverConfig:
    threshold: str | int = "exact"   # "exact", "inf", or an integer override
    jobs: int = 1
    trace: IO[str] | None = None

    def __post_init__(self):
        if isinstance(self.threshold, int):
            if self.threshold < 1:
                raise ValueError("threshold override must be at least 1")
        elif self.threshold not in ("exact", "inf"):
            raise ValueError(f"unknown threshold policy {self.threshold!r}")
        if self.jobs < 1:
            raise ValueError("jobs must be positive")

    def bound(self, k: int, size: int) -> int | float:
        if self.threshold == "inf":
            return INF
        if self.threshold == "exact":
            return threshold(k, size)
        return self.threshold


@dataclasses.dataclass
class Solution:
    verdict: str
    path: tuple[int, ...] | None = None
    colors: frozenset[int] | None = None
    rounds: list[dict] = dataclasses.field(default_factory=list)
    certificates: list[tuple[int, PruneCertificate]] = dataclasses.field(default_factory=list)

    @classmethod
    def yes(cls, path, colors, **kw) -> "Solution":
        return cls("YES", tuple(path), frozenset(colors), **kw)

    @classmethod
    def no(cls, **kw) -> "Solution":
        return cls("NO", **kw)

    @property
    def is_yes(self) -> bool:
        return self.verdict == "YES"

    def format(self) -> str:
        if not self.is_yes:
            return "NO\n"
        return "YES\n{}\n{}\n".format(" ".join(map(str, self.path)),
                                      " ".join(map(str, sorted(self.colors))))


def threshold(k: int, size: int | None = None) -> int:
    """Family size above which an irrelevant set provably exists.

    `size` is the uniform set size (defaults to k): size! * G(k)^size + 1,
    with G the color-disjoint case bound.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    ell = k if size is None else size
    return factorial(ell) * disjoint_case_bound(k) ** ell + 1



def is_k_valid_path(inst: Instance, path: Sequence[int], k: int) -> bool:
    return (is_path(inst.graph, path) and path[0] == inst.s and path[-1] == inst.t
            and len(colors_of(inst.graph, path)) <= k)


def extend_families(inst: Instance, families: Sequence[Sequence[frozenset[int]]], i: int,
                    cache: ReachCache | None = None):
    """Build the round-i candidate family; stop at the first set that reaches t.

    Returns (candidates in canonical order, early path or None).
    """
    cache = cache or ReachCache(inst)
    g = inst.graph
    previous = sorted({p for fam in families for p in fam}, key=set_key)
    out: dict[frozenset[int], None] = {}
    for v in range(inst.n):
        cv = g.colors[v]
        for p in previous:
            q = cv | p
            if len(q) != i or q in out:
                continue
            if inst.t in cache.reach(q):
                return sorted(out, key=set_key), find_path_within(inst, q, inst.t)
            out[q] = None
    return sorted(out, key=set_key), None


def _prune_one(inst: Instance, family, bound, v: int):
    kept, certs = prune_family(inst, family, v, bound)
    return v, kept, certs


def solve(inst: Instance, cfg: SolverConfig | None = None) -> Solution:
    cfg = cfg or SolverConfig()
    problems = validate_instance(inst)
    if problems:
        raise InvalidInstance("; ".join(problems))
    original = inst
    try:
        inst, removed, early = normalize_terminals(inst)
    except BudgetExhausted as exc:
        log.debug("terminal normalisation: %s", exc)
        return Solution.no()
    if early is not None:
        return _verified(original, early, [], [])

    cache = ReachCache(inst)
    families: list[list[frozenset[int]]] = [[frozenset()]]
    rounds: list[dict] = []
    certificates: list[tuple[int, PruneCertificate]] = []
    pool = ProcessPoolExecutor(cfg.jobs) if cfg.jobs > 1 else None
    try:
        if inst.t in cache.reach(frozenset()):
            return _verified(original, find_path_within(inst, frozenset(), inst.t), rounds, certificates)
        for i in range(1, inst.k + 1):
            candidates, early = extend_families(inst, families, i, cache)
            if early is not None:
                rounds.append({"round": i, "extended": len(candidates), "kept": None, "prunes": 0})
                _emit(cfg, rounds[-1])
                return _verified(original, early, rounds, certificates)
            bound = cfg.bound(inst.k, i)
            if len(candidates) <= bound:
                kept_sets = set(candidates)
                prunes = 0
            else:
                kept_sets, prunes = set(), 0
                if pool is None:
                    results = (_prune_one(inst, candidates, bound, v) for v in range(inst.n))
                else:
                    results = pool.map(partial(_prune_one, inst, candidates, bound), range(inst.n))
                for v, kept, certs in results:
                    kept_sets.update(kept)
                    prunes += len(certs)
                    certificates.extend((i, c) for c in certs)
            family = sorted(kept_sets, key=set_key)
            families.append(family)
            rounds.append({"round": i, "extended": len(candidates), "kept": len(family),
                           "prunes": prunes})
            _emit(cfg, rounds[-1])
    finally:
        if pool is not None:
            pool.shutdown()
    return Solution.no(rounds=rounds, certificates=certificates)


def _verified(original: Instance, path, rounds, certificates) -> Solution:
    if path is None or not is_k_valid_path(original, path, original.k):
        raise RuntimeError(f"internal error: produced an invalid path {path}")
    return Solution.yes(path, colors_of(original.graph, path), rounds=rounds,
                        certificates=certificates)


def _emit(cfg: SolverConfig, record: dict) -> None:
    if cfg.trace is not None:
        cfg.trace.write(json.dumps(record, sort_keys=True) + "\n")
