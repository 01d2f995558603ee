"""Walk-enumeration audit for family pruning.

A removed set p (with respect to vertex v) is harmless when every v-t walk
that p minimally completes can also be completed by some kept set: a kept
p' with |p' ∪ χ(Q)| ≤ k and p' ∩ χ(Q) ⊇ p ∩ χ(Q).
"""

from __future__ import annotations

import dataclasses
from typing import Sequence

from .graph import Instance
from .oracle import DEFAULT_COLOR_CAP, enumerate_walks_avoiding
from .reachability import ReachCache


@dataclasses.dataclass(frozen=True)
class AuditViolation:
    vertex: int
    removed: frozenset[int]
    walk_colors: frozenset[int]

    def __str__(self):
        return (f"v={self.vertex} removed={sorted(self.removed)} "
                f"walk colors={sorted(self.walk_colors)} has no replacement")


def completed_walks(inst: Instance, p: frozenset[int], v: int, cache: ReachCache | None = None,
                    cap: int = DEFAULT_COLOR_CAP) -> set[frozenset[int]]:
    """Color sets of v-t walks that p minimally completes.

    p must open v minimally; the walk may not enter any other vertex that p
    reaches, and together with p it must stay within budget.
    """
    cache = cache or ReachCache(inst)
    reach = cache.reach(p)
    if v not in reach or cache.smaller_witness(p, v) is not None:
        return set()
    states = enumerate_walks_avoiding(inst, v, reach - {v}, inst.k, cap)
    return {cs for end, cs in states if end == inst.t and len(p | cs) <= inst.k}


def audit_removals(inst: Instance, v: int, removed: Sequence[frozenset[int]],
                   kept: Sequence[frozenset[int]], cache: ReachCache | None = None,
                   cap: int = DEFAULT_COLOR_CAP) -> list[AuditViolation]:
    cache = cache or ReachCache(inst)
    k = inst.k
    out = []
    for p in removed:
        for walk in completed_walks(inst, p, v, cache, cap):
            need = p & walk
            if not any(len(q | walk) <= k and need <= q for q in kept):
                out.append(AuditViolation(v, p, walk))
    return out
