"""Reachability from s under a color allowance, and characteristic vectors."""

from __future__ import annotations

import functools
from collections import deque
from typing import Sequence

from .graph import Instance, colors_of


def _bfs(inst: Instance, p: frozenset[int], target: int | None = None):
    g = inst.graph
    s = inst.s
    if not g.colors[s] <= p:
        return {}
    parent = {s: -1}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        if u == target:
            break
        for w in g.sorted_adjacency[u]:
            if w not in parent and g.colors[w] <= p:
                parent[w] = u
                queue.append(w)
    return parent


def reachable_set(inst: Instance, p: frozenset[int]) -> frozenset[int]:
    """Vertices u with an s-u path whose colors all lie in p."""
    return frozenset(_bfs(inst, frozenset(p)))


def find_path_within(inst: Instance, p: frozenset[int], target: int) -> tuple[int, ...] | None:
    """Shortest s-target path inside the subgraph induced by colors within p.

    Ties go to the lowest neighbour id, so the answer is deterministic.
    """
    parent = _bfs(inst, frozenset(p), target)
    if target not in parent:
        return None
    path = [target]
    while parent[path[-1]] != -1:
        path.append(parent[path[-1]])
    return tuple(reversed(path))


class ReachCache:
    """Memoised reachable sets for one fixed instance."""

    def __init__(self, inst: Instance):
        self.inst = inst
        self._sets: dict[frozenset[int], frozenset[int]] = {}

    def reach(self, p: frozenset[int]) -> frozenset[int]:
        r = self._sets.get(p)
        if r is None:
            r = self._sets[p] = reachable_set(self.inst, p)
        return r

    def minimal_for(self, p: frozenset[int], v: int) -> bool:
        return v in self.reach(p) and not any(v in self.reach(p - {c}) for c in p)

    def smaller_witness(self, p: frozenset[int], v: int) -> frozenset[int] | None:
        """A maximal proper subset of p that still reaches v, if any."""
        for c in sorted(p):
            q = p - {c}
            if v in self.reach(q):
                return q
        return None


def is_minimal_opening(inst: Instance, p: frozenset[int], v: int,
                       cache: ReachCache | None = None) -> bool:
    # reachability is monotone in p, so the |p| maximal proper subsets suffice
    cache = cache or ReachCache(inst)
    return cache.minimal_for(frozenset(p), v)


@functools.total_ordering
class CharVector:
    """Suffix lengths l_0..l_k, ordered by comparing from the highest index down."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[int]):
        self.entries = tuple(entries)

    def _key(self):
        return tuple(reversed(self.entries))

    def __eq__(self, other):
        return isinstance(other, CharVector) and self.entries == other.entries

    def __lt__(self, other):
        if len(self.entries) != len(other.entries):
            raise ValueError("vectors of different budgets are incomparable")
        return self._key() < other._key()

    def __hash__(self):
        return hash(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __repr__(self):
        return f"CharVector{self.entries}"


def characteristic_vector(inst: Instance, path: Sequence[int]) -> CharVector:
    g = inst.graph
    if len(colors_of(g, path)) > inst.k:
        raise ValueError(f"path uses more than k={inst.k} colors")
    prefix_sizes = []
    seen: set[int] = set()
    for v in path:
        seen |= g.colors[v]
        prefix_sizes.append(len(seen))
    if prefix_sizes[0] > 0:
        raise ValueError("characteristic vectors need an empty start vertex")
    last = len(path) - 1
    entries = []
    for i in range(inst.k + 1):
        vi = max(j for j, size in enumerate(prefix_sizes) if size <= i)
        entries.append(last - vi)
    return CharVector(entries)
