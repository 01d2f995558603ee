"""Irrelevant color-set detection.

Every removal is backed by a certificate that `recheck_certificate` can
validate on its own:

* ``unreachable`` -- v is not reachable from s within p;
* ``proper-subset`` -- an s-v path using a proper subset of p;
* ``unmarked-path`` -- the marking record of the color-disjoint case, taken
  on the instance obtained by erasing a sunflower core and contracting
  equal-colored neighbours.
"""

from __future__ import annotations

import dataclasses
import itertools
from collections import Counter, defaultdict
from math import factorial
from typing import Sequence

from .graph import (
    AnchorOnBoundary,
    Instance,
    SubgraphFaces,
    colors_of,
    components,
    erase_colors,
    is_irreducible,
    is_path,
    make_irreducible,
    set_key,
)
from .reachability import ReachCache, find_path_within
from .sunflower import find_sunflower

UNREACHABLE = "unreachable"
PROPER_SUBSET = "proper-subset"
UNMARKED_PATH = "unmarked-path"


class PruningInvariantError(RuntimeError):
    pass


class HubBoundViolation(AssertionError):
    """More than 2k hubs although the refinement input met the size bound."""


# -- constants ---------------------------------------------------------------

def refine_factor(k: int) -> int:
    return 8 * k * k + 8 * k + 3


def marking_factor(k: int) -> int:
    return 8 * k * k + 8 * k + 2


def f_refine(k: int) -> int:
    """Input size from which refinement provably stops with fewer than 2k+1 hubs."""
    w = factorial(2 * k + 1)
    return (w * refine_factor(k)) ** (2 * k + 1) * (k * k + k) * w + 1


def disjoint_case_bound(k: int) -> int:
    return max(f_refine(k) * factorial(2 * k), marking_factor(k) * (2 * k + 1)) + 1


def sunflower_target(k: int) -> int:
    # smallest petal count that can clear the marking gate (no hubs, b = 1)
    return marking_factor(k) + 1


# -- records -----------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class RefinementResult:
    paths: tuple[tuple[int, ...], ...]
    hubs: tuple[int, ...]
    indices: tuple[int, ...]
    bound_applied: bool = False


@dataclasses.dataclass(frozen=True)
class MarkingRecord:
    instance: Instance          # reduced instance the paths live in
    vertex: int                 # image of v in the reduced instance
    core: frozenset[int]
    paths: tuple[tuple[int, ...], ...]
    hubs: tuple[int, ...]       # in visiting order
    b: int
    width: int
    orders: tuple[tuple[int, ...], ...]   # per segment, path indices in rotation order
    anchor_mode: str
    chosen: int


@dataclasses.dataclass(frozen=True)
class PruneCertificate:
    kind: str
    removed: frozenset[int]
    vertex: int
    path: tuple[int, ...] | None = None
    marking: MarkingRecord | None = None

    def summary(self) -> str:
        removed = ",".join(map(str, sorted(self.removed))) or "-"
        if self.kind == UNMARKED_PATH:
            m = self.marking
            witness = (f"hubs={list(m.hubs)} b={m.b} width={m.width} "
                       f"paths={len(m.paths)} chosen={m.chosen} core={sorted(m.core)}")
        elif self.kind == PROPER_SUBSET:
            witness = "path=" + " ".join(map(str, self.path))
        else:
            witness = "none"
        return f"{self.kind} removed={removed} v={self.vertex} {witness}"


# -- stage helpers -----------------------------------------------------------

def strip_core(inst: Instance, petals: Sequence[frozenset[int]], core: frozenset[int]):
    """Erase the core everywhere; petals shrink to their disjoint parts."""
    core = frozenset(core)
    if len(core) > inst.k:
        raise ValueError(f"core of {len(core)} colors exceeds budget {inst.k}")
    if any(not core <= p for p in petals):
        raise ValueError("core is not contained in every petal")
    reduced = erase_colors(inst, core) if core else inst
    small = [frozenset(p) - core for p in petals]
    lift = {q: q | core for q in small}
    return reduced, small, lift


def refine_paths(paths: Sequence[Sequence[int]], k: int, exclude=()) -> RefinementResult:
    """Greedily collect hub vertices lying on many of the paths."""
    excluded = set(exclude)
    idx = list(range(len(paths)))
    vsets = [set(p) for p in paths]
    hubs: list[int] = []
    while idx:
        counts = Counter(w for i in idx for w in vsets[i] if w not in excluded and w not in hubs)
        if not counts:
            break
        best = max(counts.values())
        u = min(w for w, c in counts.items() if c == best)
        # best > |Q| / ((|U|+1)! * (8k^2+8k+3)), in exact integers
        if best * factorial(len(hubs) + 1) * refine_factor(k) <= len(idx):
            break
        hubs.append(u)
        idx = [i for i in idx if u in vsets[i]]
    bound = len(paths) >= f_refine(k)
    if bound and len(hubs) >= 2 * k + 1:
        raise HubBoundViolation(f"{len(hubs)} hubs with k={k}")
    return RefinementResult(tuple(tuple(paths[i]) for i in idx), tuple(hubs), tuple(idx), bound)


def hub_order(path: Sequence[int], hubs: Sequence[int]) -> tuple[int, ...]:
    pos = {w: i for i, w in enumerate(path)}
    return tuple(sorted(hubs, key=pos.__getitem__))


def select_consistent_order(paths: Sequence[Sequence[int]], hubs: Sequence[int]):
    """Largest subfamily visiting the hubs in one order; ties to the smaller order."""
    groups: dict[tuple[int, ...], list[int]] = defaultdict(list)
    for i, p in enumerate(paths):
        groups[hub_order(p, hubs)].append(i)
    if not groups:
        return tuple(), [], []
    tau = min(groups, key=lambda o: (-len(groups[o]), o))
    chosen = groups[tau]
    return tau, [tuple(paths[i]) for i in chosen], chosen


def _segment(path: Sequence[int], a: int, b: int) -> tuple[int, ...]:
    i, j = path.index(a), path.index(b)
    return tuple(path[i:j + 1])


def _segment_edges(seg: Sequence[int]):
    return [(min(a, b), max(a, b)) for a, b in zip(seg, seg[1:])]


def max_multiplicity(paths: Sequence[Sequence[int]], special) -> int:
    counts = Counter(w for p in paths for w in set(p) if w not in special)
    return max(counts.values(), default=0)


def _segment_orders(inst: Instance, paths, stops, faces=None):
    """Rotation order of the paths around each segment start, anchored at t.

    Returns (orders, anchor_mode); raises AnchorOnBoundary when t lies on a
    segment subgraph.
    """
    g = inst.graph
    t = inst.t
    v = stops[-1]
    if t in stops[:-1]:
        raise AnchorOnBoundary("t coincides with s or a hub")
    mode = "merged" if t == v else "corner"
    orders = []
    for i in range(len(stops) - 1):
        u, nxt = stops[i], stops[i + 1]
        segs = [_segment(p, u, nxt) for p in paths]
        if any(len(sg) < 2 for sg in segs):
            raise PruningInvariantError("empty segment")
        second: dict[int, int] = {}
        for j, sg in enumerate(segs):
            if sg[1] in second:
                raise PruningInvariantError(f"neighbour {sg[1]} of {u} starts two segments")
            second[sg[1]] = j
        ring = [w for w in g.rotation[u] if w in second]
        if len(ring) != len(segs):
            raise PruningInvariantError("segment start missing from rotation")
        start = 0
        if t != v:
            h_edges = {e for sg in segs for e in _segment_edges(sg)}
            sub = SubgraphFaces(g, h_edges, faces)
            target = sub.face_containing(t)
            corner = [j for j, w in enumerate(ring) if sub.face_of_dart((u, w)) == target]
            if corner:
                start = corner[0]
            else:
                for j, w in enumerate(ring):
                    sg = segs[second[w]]
                    if any(sub.face_of_dart((a, b)) == target or sub.face_of_dart((b, a)) == target
                           for a, b in zip(sg, sg[1:])):
                        start = j
                        mode = "edge"
                        break
                else:
                    raise PruningInvariantError("face of t touches no segment path")
        orders.append(tuple(second[w] for w in ring[start:] + ring[:start]))
    return orders, mode


def _marked(orders, width: int) -> set[int]:
    out: set[int] = set()
    if width <= 0:
        return out
    for order in orders:
        out.update(order[:width])
        out.update(order[-width:])
    return out


def pick_unmarked(inst: Instance, paths: Sequence[Sequence[int]], hubs: Sequence[int], v: int,
                  core: frozenset[int] = frozenset()):
    """Return (path, MarkingRecord) for a path no short v-t walk can touch, or None.

    `inst` must be irreducible, the paths pairwise color-disjoint s-v paths
    visiting `hubs` in the given order.
    """
    paths = [tuple(p) for p in paths]
    k = inst.k
    stops = [inst.s, *hubs, v]
    if not paths or inst.s == v:
        return None
    b = max_multiplicity(paths, set(stops))
    if b == 0 or len(paths) <= marking_factor(k) * (len(hubs) + 1) * b:
        return None
    comp = next(c for c in components(inst.graph) if inst.s in c)
    if inst.t not in comp:
        return None
    try:
        orders, mode = _segment_orders(inst, paths, stops)
    except AnchorOnBoundary:
        return None
    width = (2 * k + 1) ** 2 * b
    marked = _marked(orders, width)
    free = [i for i in range(len(paths)) if i not in marked]
    if not free:
        return None
    chosen = free[0]
    record = MarkingRecord(inst, v, frozenset(core), tuple(paths), tuple(hubs), b, width,
                           tuple(orders), mode, chosen)
    return paths[chosen], record


# -- main entry points ---------------------------------------------------------

def fast_path_certificate(inst: Instance, p: frozenset[int], v: int,
                          cache: ReachCache | None = None) -> PruneCertificate | None:
    cache = cache or ReachCache(inst)
    if v not in cache.reach(p):
        return PruneCertificate(UNREACHABLE, p, v)
    q = cache.smaller_witness(p, v)
    if q is None:
        return None
    return PruneCertificate(PROPER_SUBSET, p, v, path=find_path_within(inst, q, v))


def find_irrelevant(inst: Instance, family: Sequence[frozenset[int]], v: int,
                    cache: ReachCache | None = None):
    """Find p in `family` whose removal keeps a k-representation w.r.t. v.

    Returns (p, certificate) or None when no stage can certify a removal.
    """
    cache = cache or ReachCache(inst)
    fam = sorted({frozenset(p) for p in family}, key=set_key)
    if not fam:
        return None
    if len({len(p) for p in fam}) != 1:
        raise ValueError("family is not uniform")
    for p in fam:
        cert = fast_path_certificate(inst, p, v, cache)
        if cert is not None:
            return p, cert

    flower = find_sunflower(fam, sunflower_target(inst.k))
    if flower is None:
        return None
    reduced, petals, lift = strip_core(inst, flower.petals, flower.core)
    reduced, vmap = make_irreducible(reduced)
    v2 = vmap[v]
    if reduced.s == v2:
        return None
    paths = []
    for q in petals:
        path = find_path_within(reduced, q, v2)
        if path is None or colors_of(reduced.graph, path) != q:
            return None
        paths.append(path)
    for a, b in itertools.combinations(petals, 2):
        if a & b:
            raise PruningInvariantError("petal paths are not color-disjoint")

    refined = refine_paths(paths, reduced.k, exclude=(reduced.s, v2))
    tau, consistent, _ = select_consistent_order(refined.paths, refined.hubs)
    picked = pick_unmarked(reduced, consistent, tau, v2, flower.core)
    if picked is None:
        return None
    path, record = picked
    removed = lift[colors_of(reduced.graph, path)]
    return removed, PruneCertificate(UNMARKED_PATH, removed, v, marking=record)


def prune_family(inst: Instance, family, v: int, threshold: int | float,
                 cache: ReachCache | None = None):
    """Remove certified-irrelevant sets until at most `threshold` remain.

    Stops early when nothing more can be certified.  Returns the kept sets
    (canonical order) and the certificates of the removals.
    """
    cache = cache or ReachCache(inst)
    fam = sorted({frozenset(p) for p in family}, key=set_key)
    certs: list[PruneCertificate] = []
    if len(fam) <= threshold:
        return fam, certs
    # fast-path verdicts do not depend on the rest of the family
    for p in list(fam):
        if len(fam) <= threshold:
            break
        cert = fast_path_certificate(inst, p, v, cache)
        if cert is not None:
            fam.remove(p)
            certs.append(cert)
    while len(fam) > threshold:
        found = find_irrelevant(inst, fam, v, cache)
        if found is None:
            break
        p, cert = found
        fam.remove(p)
        certs.append(cert)
    return fam, certs


# -- auditing ----------------------------------------------------------------

def recheck_certificate(inst: Instance, cert: PruneCertificate) -> list[str]:
    """Independently validate a certificate; returns the list of problems."""
    from .reachability import reachable_set

    g = inst.graph
    p, v = cert.removed, cert.vertex
    if cert.kind == UNREACHABLE:
        return [] if v not in reachable_set(inst, p) else ["v is reachable by the removed set"]
    if cert.kind == PROPER_SUBSET:
        path = cert.path
        problems = []
        if path is None or not is_path(g, path):
            return ["witness is not a path"]
        if path[0] != inst.s or path[-1] != v:
            problems.append("witness does not join s to v")
        if not colors_of(g, path) < p:
            problems.append("witness colors are not a proper subset")
        return problems
    if cert.kind != UNMARKED_PATH:
        return [f"unknown certificate kind {cert.kind}"]
    return _recheck_marking(inst, cert)


def _recheck_marking(inst: Instance, cert: PruneCertificate) -> list[str]:
    m = cert.marking
    problems: list[str] = []
    expected, vmap = make_irreducible(erase_colors(inst, m.core) if m.core else inst)
    if expected != m.instance or vmap[cert.vertex] != m.vertex:
        return ["reduced instance does not match core erasure plus contraction"]
    red = m.instance
    g = red.graph
    if not is_irreducible(g):
        problems.append("reduced graph is not irreducible")
    stops = [red.s, *m.hubs, m.vertex]
    color_sets = []
    for path in m.paths:
        if not is_path(g, path) or path[0] != red.s or path[-1] != m.vertex:
            problems.append(f"{path} is not an s-v path")
            continue
        cs = colors_of(g, path)
        if len(cs) > red.k:
            problems.append(f"{path} uses more than k colors")
        if hub_order(path, m.hubs) != tuple(m.hubs) or not set(m.hubs) <= set(path):
            problems.append(f"{path} does not visit hubs in order")
        color_sets.append(cs)
    for a, b in itertools.combinations(color_sets, 2):
        if a & b:
            problems.append("paths are not pairwise color-disjoint")
            break
    if problems:
        return problems
    b = max_multiplicity(m.paths, set(stops))
    if b != m.b:
        problems.append(f"b recomputed as {b}, certificate says {m.b}")
    if len(m.paths) <= marking_factor(red.k) * (len(m.hubs) + 1) * b:
        problems.append("marking gate not met")
    if m.width != (2 * red.k + 1) ** 2 * b:
        problems.append("marking width mismatch")
    try:
        orders, _ = _segment_orders(red, m.paths, stops)
    except (AnchorOnBoundary, PruningInvariantError) as exc:
        return problems + [f"segment ordering failed: {exc}"]
    if tuple(orders) != m.orders:
        problems.append("segment orders differ")
    if m.chosen in _marked(orders, m.width):
        problems.append("chosen path is marked")
    if colors_of(g, m.paths[m.chosen]) | m.core != cert.removed:
        problems.append("removed set is not the chosen path's colors plus core")
    return problems


def dump_certificates(certs: Sequence[PruneCertificate]) -> str:
    return "".join(c.summary() + "\n" for c in certs)
