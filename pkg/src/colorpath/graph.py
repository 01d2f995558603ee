"""Colored plane graphs stored as rotation systems.

A graph is a tuple of per-vertex color sets plus, for every vertex, the
counterclockwise cyclic order of its neighbours.  Faces are traced from the
rotation with the convention::

    next((u, w)) = (w, ccw_successor_of_u_around_w)

so every face lies to the right of its darts; bounded faces of a straight-line
drawing come out clockwise, the outer boundary of a component counterclockwise.
"""

from __future__ import annotations

import dataclasses
from collections import deque
from functools import cached_property
from typing import Iterable, Sequence

ColorSet = frozenset  # frozenset[int]
Dart = tuple[int, int]
EMPTY: frozenset[int] = frozenset()


class GraphError(ValueError):
    pass


class NonPlanarError(GraphError):
    pass


class InvalidContraction(GraphError):
    pass


class AnchorOnBoundary(GraphError):
    """The anchor vertex of a face query lies on the subgraph itself."""


class BudgetExhausted(Exception):
    """Terminal colors alone exceed the budget: the instance is a NO."""


def canonical(p: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(p))


def set_key(p: frozenset[int]) -> tuple:
    """Sort key for color sets: by size, then lexicographically."""
    return (len(p), tuple(sorted(p)))


@dataclasses.dataclass(frozen=True)
class ColoredPlaneGraph:
    colors: tuple[frozenset[int], ...]
    rotation: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.colors) != len(self.rotation):
            raise GraphError("colors and rotation disagree on vertex count")

    @property
    def n(self) -> int:
        return len(self.colors)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(r) for r in self.rotation)

    @cached_property
    def sorted_adjacency(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(r)) for r in self.rotation)

    @cached_property
    def _position(self) -> tuple[dict[int, int], ...]:
        return tuple({w: i for i, w in enumerate(r)} for r in self.rotation)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, w) for u in range(self.n) for w in self.rotation[u] if u < w]

    def darts(self) -> list[Dart]:
        return [(u, w) for u in range(self.n) for w in self.rotation[u]]

    def ccw_successor(self, v: int, w: int) -> int:
        rot = self.rotation[v]
        return rot[(self._position[v][w] + 1) % len(rot)]

    def next_dart(self, d: Dart) -> Dart:
        u, w = d
        return (w, self.ccw_successor(w, u))

    @classmethod
    def from_edges(cls, colors: Sequence[Iterable[int]], edges: Iterable[tuple[int, int]],
                   rotation: Sequence[Sequence[int]] | None = None) -> "ColoredPlaneGraph":
        """Build a graph; computes a planar embedding when `rotation` is omitted."""
        n = len(colors)
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, w in edges:
            if u == w:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= w < n):
                raise GraphError(f"edge {u}-{w} out of range")
            if w in adj[u]:
                raise GraphError(f"duplicate edge {u}-{w}")
            adj[u].add(w)
            adj[w].add(u)
        if rotation is None:
            rotation = planar_rotation(n, adj)
        else:
            rotation = [tuple(r) for r in rotation]
            for v in range(n):
                if len(rotation[v]) != len(adj[v]) or set(rotation[v]) != adj[v]:
                    raise GraphError(f"rotation of {v} is not a permutation of its neighbours")
        return cls(tuple(frozenset(c) for c in colors), tuple(tuple(r) for r in rotation))

    def with_colors(self, colors: Sequence[frozenset[int]]) -> "ColoredPlaneGraph":
        return ColoredPlaneGraph(tuple(colors), self.rotation)


def planar_rotation(n: int, adj: Sequence[Iterable[int]]) -> list[tuple[int, ...]]:
    import networkx as nx

    g = nx.Graph()
    g.add_nodes_from(range(n))
    for u in range(n):
        g.add_edges_from((u, w) for w in adj[u])
    planar, emb = nx.check_planarity(g)
    if not planar:
        raise NonPlanarError("graph is not planar")
    # networkx reports clockwise orders
    return [tuple(reversed(list(emb.neighbors_cw_order(v)))) if g.degree(v) else () for v in range(n)]


@dataclasses.dataclass(frozen=True)
class Instance:
    graph: ColoredPlaneGraph
    s: int
    t: int
    k: int
    color_count: int

    @property
    def n(self) -> int:
        return self.graph.n

    def chi(self, v: int) -> frozenset[int]:
        return self.graph.colors[v]

    def replace(self, **changes) -> "Instance":
        return dataclasses.replace(self, **changes)


# -- walks ------------------------------------------------------------------

def colors_of(g: ColoredPlaneGraph, vertices: Iterable[int]) -> frozenset[int]:
    out: set[int] = set()
    for v in vertices:
        out |= g.colors[v]
    return frozenset(out)


def is_walk(g: ColoredPlaneGraph, seq: Sequence[int]) -> bool:
    if not seq or any(not 0 <= v < g.n for v in seq):
        return False
    return all(b in g.adjacency[a] for a, b in zip(seq, seq[1:]))


def is_path(g: ColoredPlaneGraph, seq: Sequence[int]) -> bool:
    return is_walk(g, seq) and len(set(seq)) == len(seq)


def shortcut(walk: Sequence[int]) -> tuple[int, ...]:
    """Remove cycles from a walk, keeping endpoints; the result is a path."""
    out: list[int] = []
    where: dict[int, int] = {}
    for v in walk:
        if v in where:
            cut = where[v]
            for w in out[cut + 1:]:
                del where[w]
            del out[cut + 1:]
        else:
            where[v] = len(out)
            out.append(v)
    return tuple(out)


# -- faces ------------------------------------------------------------------

def trace_faces(g: ColoredPlaneGraph) -> list[tuple[Dart, ...]]:
    seen: set[Dart] = set()
    faces = []
    for d in sorted(g.darts()):
        if d in seen:
            continue
        face = []
        cur = d
        while cur not in seen:
            seen.add(cur)
            face.append(cur)
            cur = g.next_dart(cur)
        faces.append(tuple(face))
    return faces


def dart_face_index(faces: Sequence[Sequence[Dart]]) -> dict[Dart, int]:
    return {d: i for i, f in enumerate(faces) for d in f}


def components(g: ColoredPlaneGraph, vertices: Iterable[int] | None = None) -> list[list[int]]:
    allowed = set(range(g.n)) if vertices is None else set(vertices)
    seen: set[int] = set()
    comps = []
    for v in sorted(allowed):
        if v in seen:
            continue
        comp = [v]
        seen.add(v)
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in g.rotation[u]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def euler_violations(g: ColoredPlaneGraph) -> list[str]:
    faces = trace_faces(g)
    face_of = dart_face_index(faces)
    out = []
    for comp in components(g):
        darts = [(u, w) for u in comp for w in g.rotation[u]]
        if not darts:
            continue
        v, e = len(comp), len(darts) // 2
        f = len({face_of[d] for d in darts})
        if v - e + f != 2:
            out.append(f"embedding is not planar on component of {comp[0]}: V-E+F={v - e + f}")
    return out


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smallest index is the representative, so face ids are canonical
            lo, hi = min(ra, rb), max(ra, rb)
            self.parent[hi] = lo


class SubgraphFaces:
    """Faces of the plane subgraph spanned by an edge subset H of `g`.

    Faces of H are unions of faces of g glued across every edge outside H;
    a face of H is identified by the smallest index of a g-face it contains.
    Only meaningful when g is connected.
    """

    def __init__(self, g: ColoredPlaneGraph, h_edges: Iterable[tuple[int, int]],
                 faces: Sequence[Sequence[Dart]] | None = None):
        self.g = g
        self.faces = trace_faces(g) if faces is None else faces
        self.face_of = dart_face_index(self.faces)
        self.h_edges = {(min(a, b), max(a, b)) for a, b in h_edges}
        self.h_vertices = {x for e in self.h_edges for x in e}
        uf = _UnionFind(len(self.faces))
        for u, w in g.edges():
            if (u, w) not in self.h_edges:
                uf.union(self.face_of[(u, w)], self.face_of[(w, u)])
        self._uf = uf

    def face_of_dart(self, d: Dart) -> int:
        return self._uf.find(self.face_of[d])

    def face_containing(self, anchor: int) -> int:
        """Face of H around `anchor`.

        A vertex of H is accepted only when every face around it belongs to
        the same face of H (a pendant vertex, say); otherwise its position is
        ambiguous and AnchorOnBoundary is raised.
        """
        roots = {self.face_of_dart((anchor, w)) for w in self.g.rotation[anchor]}
        if not roots:
            raise GraphError(f"vertex {anchor} is isolated; its face is undefined")
        if len(roots) != 1:
            if anchor in self.h_vertices:
                raise AnchorOnBoundary(f"vertex {anchor} lies on the subgraph")
            raise GraphError(f"faces around {anchor} were not merged; graph disconnected?")
        return roots.pop()


def face_of_subgraph_containing(g: ColoredPlaneGraph, h_edges: Iterable[tuple[int, int]],
                                anchor: int) -> int:
    return SubgraphFaces(g, h_edges).face_containing(anchor)


# -- validation and normalisation ------------------------------------------

def color_classes(g: ColoredPlaneGraph) -> dict[int, list[int]]:
    classes: dict[int, list[int]] = {}
    for v, cs in enumerate(g.colors):
        for c in cs:
            classes.setdefault(c, []).append(v)
    return classes


def validate_instance(inst: Instance) -> list[str]:
    g = inst.graph
    out: list[str] = []
    for v in range(g.n):
        rot = g.rotation[v]
        if v in rot:
            out.append(f"loop at vertex {v}")
        if len(set(rot)) != len(rot):
            out.append(f"multi-edge at vertex {v}")
        for w in rot:
            if not 0 <= w < g.n:
                out.append(f"neighbour {w} of {v} out of range")
            elif v not in g.adjacency[w]:
                out.append(f"edge {v}-{w} not symmetric")
        bad = [c for c in g.colors[v] if not 0 <= c < inst.color_count]
        if bad:
            out.append(f"vertex {v} has color ids outside [0, {inst.color_count})")
    if out:
        return out
    out.extend(euler_violations(g))
    for c, members in sorted(color_classes(g).items()):
        if len(components(g, members)) > 1:
            out.append(f"color-{c} disconnected")
    if not (0 <= inst.s < g.n and 0 <= inst.t < g.n):
        out.append("terminal out of range")
    elif inst.s == inst.t:
        out.append("s equals t")
    if inst.k < 0:
        out.append("negative budget")
    return out


def erase_colors(inst: Instance, removed: frozenset[int]) -> Instance:
    g = inst.graph
    colors = tuple(c - removed for c in g.colors)
    return inst.replace(graph=g.with_colors(colors), k=inst.k - len(removed))


def normalize_terminals(inst: Instance) -> tuple[Instance, frozenset[int], tuple[int, ...] | None]:
    """Make s and t empty and nonadjacent, or settle the instance outright.

    Returns ``(instance, removed_colors, early_path)``; ``early_path`` is
    ``(s, t)`` when the terminals are adjacent and affordable.  Raises
    BudgetExhausted when no k-valid s-t path can exist.
    """
    removed = inst.chi(inst.s) | inst.chi(inst.t)
    if inst.t in inst.graph.adjacency[inst.s]:
        if len(removed) <= inst.k:
            return inst, frozenset(removed), (inst.s, inst.t)
        raise BudgetExhausted(f"adjacent terminals need {len(removed)} > {inst.k} colors")
    if len(removed) > inst.k:
        raise BudgetExhausted(f"terminal colors {len(removed)} exceed budget {inst.k}")
    if not removed:
        return inst, EMPTY, None
    return erase_colors(inst, frozenset(removed)), frozenset(removed), None


# -- contraction ------------------------------------------------------------

def color_contract(g: ColoredPlaneGraph, x: int, y: int) -> tuple[ColoredPlaneGraph, tuple[int, ...]]:
    """Contract edge xy of equal-colored endpoints.

    The merged vertex takes id min(x, y); ids above max(x, y) shift down by
    one.  Its rotation is x's rotation read after y followed by y's rotation
    read after x.  A neighbour common to x and y keeps its edge to x.
    """
    if x == y or y not in g.adjacency[x]:
        raise InvalidContraction(f"{x} and {y} are not adjacent")
    if g.colors[x] != g.colors[y]:
        raise InvalidContraction(f"{x} and {y} carry different color sets")
    z, gone = min(x, y), max(x, y)
    vmap = tuple(z if w == gone else (w - 1 if w > gone else w) for w in range(g.n))

    rx, ry = g.rotation[x], g.rotation[y]
    ix, iy = rx.index(y), ry.index(x)
    merged_old = rx[ix + 1:] + rx[:ix] + ry[iy + 1:] + ry[:iy]
    merged: list[int] = []
    for w in merged_old:
        if w not in merged:
            merged.append(w)
    common = g.adjacency[x] & g.adjacency[y]

    rotation: list[tuple[int, ...]] = []
    colors: list[frozenset[int]] = []
    for w in range(g.n):
        if w == gone:
            continue
        if w == z:
            rotation.append(tuple(vmap[a] for a in merged))
        else:
            rot = [a for a in g.rotation[w] if not (a == y and w in common)]
            rotation.append(tuple(vmap[a] for a in rot))
        colors.append(g.colors[w])
    return ColoredPlaneGraph(tuple(colors), tuple(rotation)), vmap


def compose_maps(first: Sequence[int], second: Sequence[int]) -> tuple[int, ...]:
    return tuple(second[first[v]] for v in range(len(first)))


def contract_instance(inst: Instance, x: int, y: int) -> tuple[Instance, tuple[int, ...]]:
    g, vmap = color_contract(inst.graph, x, y)
    return inst.replace(graph=g, s=vmap[inst.s], t=vmap[inst.t]), vmap


def _contractible_pair(g: ColoredPlaneGraph) -> tuple[int, int] | None:
    for u in range(g.n):
        for w in g.sorted_adjacency[u]:
            if w > u and g.colors[u] == g.colors[w]:
                return u, w
    return None


def make_irreducible(inst: Instance) -> tuple[Instance, tuple[int, ...]]:
    vmap = tuple(range(inst.n))
    while (pair := _contractible_pair(inst.graph)) is not None:
        inst, step = contract_instance(inst, *pair)
        vmap = compose_maps(vmap, step)
    return inst, vmap


def is_irreducible(g: ColoredPlaneGraph) -> bool:
    return _contractible_pair(g) is None
