"""Exponential-time reference solvers for desk-scale checking."""

from __future__ import annotations

import itertools
from collections import deque
from typing import Iterable

from .graph import Instance, colors_of, shortcut
from .reachability import find_path_within

DEFAULT_COLOR_CAP = 16
MAX_K = 6


class OracleCapExceeded(ValueError):
    pass


def _used_colors(inst: Instance) -> list[int]:
    return sorted(set().union(*inst.graph.colors)) if inst.n else []


def _check_caps(inst: Instance, k: int, cap: int) -> None:
    if len(_used_colors(inst)) > cap:
        raise OracleCapExceeded(f"{len(_used_colors(inst))} colors exceed cap {cap}")
    if k > MAX_K:
        raise OracleCapExceeded(f"k={k} exceeds oracle limit {MAX_K}")


def oracle_solve(inst: Instance, cap: int = DEFAULT_COLOR_CAP):
    """Breadth-first search over (vertex, colors used so far) states."""
    from .solver import Solution

    _check_caps(inst, inst.k, cap)
    g = inst.graph
    start = (inst.s, g.colors[inst.s])
    if len(start[1]) > inst.k:
        return Solution.no()
    parent = {start: None}
    queue = deque([start])
    goal = None
    while queue:
        state = queue.popleft()
        v, used = state
        if v == inst.t:
            goal = state
            break
        for w in g.sorted_adjacency[v]:
            nxt_used = used | g.colors[w]
            if len(nxt_used) > inst.k:
                continue
            nxt = (w, nxt_used)
            if nxt not in parent:
                parent[nxt] = state
                queue.append(nxt)
    if goal is None:
        return Solution.no()
    walk = []
    state = goal
    while state is not None:
        walk.append(state[0])
        state = parent[state]
    path = shortcut(walk[::-1])
    return Solution.yes(path, colors_of(g, path))


def oracle_solve_subsets(inst: Instance, cap: int = DEFAULT_COLOR_CAP):
    """Independent oracle: try every color set of size at most k."""
    from .solver import Solution

    _check_caps(inst, inst.k, cap)
    palette = _used_colors(inst)
    for size in range(min(inst.k, len(palette)) + 1):
        for combo in itertools.combinations(palette, size):
            path = find_path_within(inst, frozenset(combo), inst.t)
            if path is not None:
                return Solution.yes(path, colors_of(inst.graph, path))
    return Solution.no()


def oracle_min_colors(inst: Instance, cap: int = DEFAULT_COLOR_CAP) -> float | int:
    """Fewest colors on any s-t path; infinity when t is unreachable."""
    palette = _used_colors(inst)
    if len(palette) > cap:
        raise OracleCapExceeded(f"{len(palette)} colors exceed cap {cap}")
    for size in range(len(palette) + 1):
        for combo in itertools.combinations(palette, size):
            if find_path_within(inst, frozenset(combo), inst.t) is not None:
                return size
    return float("inf")


def enumerate_walks_avoiding(inst: Instance, v: int, avoid: Iterable[int], k: int,
                             cap: int = DEFAULT_COLOR_CAP) -> set[tuple[int, frozenset[int]]]:
    """All (endpoint, color set) pairs of v-rooted walks with at most k colors.

    Vertices in `avoid` are never entered; the root itself is exempt, so
    putting v into `avoid` forbids returning to it.
    """
    _check_caps(inst, k, cap)
    g = inst.graph
    blocked = set(avoid)
    start = (v, g.colors[v])
    if len(start[1]) > k:
        return set()
    seen = {start}
    queue = deque([start])
    while queue:
        u, used = queue.popleft()
        for w in g.sorted_adjacency[u]:
            if w in blocked:
                continue
            nxt = (w, used | g.colors[w])
            if len(nxt[1]) <= k and nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen
