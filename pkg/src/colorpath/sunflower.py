"""Erdős–Rado sunflower extraction for uniform set families."""

from __future__ import annotations

import dataclasses
from collections import Counter
from typing import Iterable, Sequence

from .graph import set_key


@dataclasses.dataclass(frozen=True)
class Sunflower:
    core: frozenset[int]
    petals: tuple[frozenset[int], ...]

    def is_valid(self) -> bool:
        ps = self.petals
        if len(set(ps)) != len(ps):
            return False
        return all(ps[i] & ps[j] == self.core
                   for i in range(len(ps)) for j in range(i + 1, len(ps)))


def erdos_rado_bound(b: int, a: int) -> int:
    from math import factorial
    return factorial(b) * (a - 1) ** b


def find_sunflower(family: Iterable[frozenset[int]], a: int) -> Sunflower | None:
    """Return a sunflower with at least `a` petals, or None.

    Success is guaranteed once the family holds b!(a-1)^b distinct b-sets.
    A greedy maximal disjoint subfamily is tried first; if it is too small,
    the construction recurses on the sets through the most frequent element
    of its union (smallest id on ties).  All petals of the disjoint subfamily
    found at the bottom are returned, not just `a` of them.
    """
    fam = sorted({frozenset(p) for p in family}, key=set_key)
    if not fam:
        return None
    sizes = {len(p) for p in fam}
    if len(sizes) != 1:
        raise ValueError("family is not uniform")
    if a <= 1:
        return Sunflower(fam[0], (fam[0],))
    found = _search(fam, a)
    if found is None:
        return None
    core, links = found
    return Sunflower(core, tuple(sorted((lk | core for lk in links), key=set_key)))


def _search(fam: Sequence[frozenset[int]], a: int):
    disjoint: list[frozenset[int]] = []
    used: set[int] = set()
    for p in fam:
        if not (p & used):
            disjoint.append(p)
            used |= p
    if len(disjoint) >= a:
        return frozenset(), disjoint
    if not used:
        return None
    counts = Counter(c for p in fam for c in p if c in used)
    best = max(counts.values())
    x = min(c for c, n in counts.items() if n == best)
    link = [p - {x} for p in fam if x in p]
    if len(link) < a:
        return None
    found = _search(link, a)
    if found is None:
        return None
    core, petals = found
    return core | {x}, petals
