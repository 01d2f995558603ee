"""Polygonal obstacle arrangements and their colored planar duals.

All predicates are exact: inputs are integers, intersection points are
``Fraction`` pairs.  Degenerate configurations (touching or overlapping
boundaries, three boundaries through one point) are rejected, not perturbed.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from typing import Sequence

from .graph import ColoredPlaneGraph, Instance

COORD_LIMIT = 10**6

Point = tuple  # (x, y) with int or Fraction entries


class GeometryError(ValueError):
    pass


class DegeneratePosition(GeometryError):
    pass


class OnBoundary(GeometryError):
    pass


@dataclasses.dataclass(frozen=True)
class Obstacle:
    id: int
    points: tuple[tuple[int, int], ...]

    def segments(self):
        pts = self.points
        return [(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts))]


@dataclasses.dataclass(frozen=True)
class GeometricInstance:
    obstacles: tuple[Obstacle, ...]
    s: tuple[int, int]
    t: tuple[int, int]
    k: int


@dataclasses.dataclass
class Face:
    cycles: list[list[tuple[int, int]]]   # dart cycles; for bounded faces the first is the outer one
    bounded: bool
    sample: tuple[Fraction, Fraction] | None = None


@dataclasses.dataclass
class Arrangement:
    vertices: list[tuple[Fraction, Fraction]]
    edges: list[tuple[int, int, int]]          # (a, b, obstacle id), a < b
    rotation: list[tuple[int, ...]]            # ccw neighbour order per vertex
    faces: list[Face]                          # faces[0] is the unbounded face
    dart_face: dict[tuple[int, int], int]
    obstacles: tuple[Obstacle, ...]

    def euler_ok(self) -> bool:
        comps = _vertex_components(len(self.vertices), self.edges)
        return len(self.vertices) - len(self.edges) + len(self.faces) == 1 + comps

    def face_polygons(self, f: int) -> list[list[tuple[Fraction, Fraction]]]:
        return [[self.vertices[a] for a, _ in cyc] for cyc in self.faces[f].cycles]


# -- exact predicates ------------------------------------------------------------

def cross(o: Point, a: Point, b: Point):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def on_segment(p: Point, a: Point, b: Point) -> bool:
    return (cross(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segment_intersection(a: Point, b: Point, c: Point, d: Point):
    """Classify the intersection of segments ab and cd.

    Returns None (disjoint), ("cross", point) for a proper crossing, or
    ("touch", point) / ("overlap", None) for degenerate contact.
    """
    d1, d2 = _sign(cross(c, d, a)), _sign(cross(c, d, b))
    d3, d4 = _sign(cross(a, b, c)), _sign(cross(a, b, d))
    if d1 == d2 == d3 == d4 == 0:
        if max(min(a[0], b[0]), min(c[0], d[0])) <= min(max(a[0], b[0]), max(c[0], d[0])) and \
           max(min(a[1], b[1]), min(c[1], d[1])) <= min(max(a[1], b[1]), max(c[1], d[1])):
            return ("overlap", None)
        return None
    if d1 * d2 < 0 and d3 * d4 < 0:
        den = (b[0] - a[0]) * (d[1] - c[1]) - (b[1] - a[1]) * (d[0] - c[0])
        num = (c[0] - a[0]) * (d[1] - c[1]) - (c[1] - a[1]) * (d[0] - c[0])
        r = Fraction(num, den)
        return ("cross", (a[0] + r * (b[0] - a[0]), a[1] + r * (b[1] - a[1])))
    for p, x, y in ((a, c, d), (b, c, d), (c, a, b), (d, a, b)):
        if on_segment(p, x, y):
            return ("touch", p)
    return None


def point_in_polygon(p: Point, poly: Sequence[Point]) -> bool:
    """Strict interior test by ray crossing; p must not lie on the boundary."""
    inside = False
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        if (a[1] > p[1]) != (b[1] > p[1]):
            # x of the edge at height p.y compared with p.x, without division
            lhs = (p[0] - a[0]) * (b[1] - a[1])
            rhs = (b[0] - a[0]) * (p[1] - a[1])
            if (lhs < rhs) == (b[1] > a[1]):
                inside = not inside
    return inside


def signed_area2(poly: Sequence[Point]):
    return sum(poly[i][0] * poly[(i + 1) % len(poly)][1] - poly[(i + 1) % len(poly)][0] * poly[i][1]
               for i in range(len(poly)))


def _half(v: Point) -> int:
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def _angle_cmp(u: Point, v: Point) -> int:
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    c = u[0] * v[1] - u[1] * v[0]
    return -_sign(c)


def ccw_sort(center: Point, points: Sequence[tuple[int, Point]]) -> list[int]:
    """Ids of `points` sorted counterclockwise by direction from `center`, starting east."""
    keyed = [(i, (p[0] - center[0], p[1] - center[1])) for i, p in points]
    keyed.sort(key=cmp_to_key(lambda a, b: _angle_cmp(a[1], b[1])))
    return [i for i, _ in keyed]


def rotation_from_coordinates(coords: Sequence[Point], adj: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    return [tuple(ccw_sort(coords[v], [(w, coords[w]) for w in adj[v]])) for v in range(len(coords))]


# -- validation --------------------------------------------------------------------

def validate_obstacle(ob: Obstacle) -> None:
    pts = ob.points
    if len(pts) < 3:
        raise GeometryError(f"obstacle {ob.id} has fewer than 3 vertices")
    for x, y in pts:
        if not (isinstance(x, int) and isinstance(y, int)):
            raise GeometryError(f"obstacle {ob.id} has non-integer coordinates")
        if abs(x) > COORD_LIMIT or abs(y) > COORD_LIMIT:
            raise GeometryError(f"obstacle {ob.id} exceeds coordinate bound {COORD_LIMIT}")
    if len(set(pts)) != len(pts):
        raise GeometryError(f"obstacle {ob.id} repeats a vertex")
    if signed_area2(pts) == 0:
        raise GeometryError(f"obstacle {ob.id} has zero area")
    segs = ob.segments()
    n = len(segs)
    for i, j in combinations(range(n), 2):
        hit = segment_intersection(*segs[i], *segs[j])
        adjacent = j == i + 1 or (i == 0 and j == n - 1)
        if hit is None:
            continue
        if adjacent and hit[0] == "touch":
            continue
        raise GeometryError(f"obstacle {ob.id} is not simple (edges {i} and {j})")


# -- arrangement ---------------------------------------------------------------------

def _vertex_components(n: int, edges) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, _ in edges:
        parent[find(a)] = find(b)
    return len({find(x) for x in range(n)})


def build_arrangement(obstacles: Sequence[Obstacle]) -> Arrangement:
    ids = [ob.id for ob in obstacles]
    if len(set(ids)) != len(ids):
        raise GeometryError("duplicate obstacle ids")
    for ob in obstacles:
        validate_obstacle(ob)
    segs = [(ob.id, j, a, b) for ob in obstacles for j, (a, b) in enumerate(ob.segments())]
    cuts: dict[int, list] = {i: [] for i in range(len(segs))}
    crossings: dict[tuple, tuple[int, int]] = {}
    for i, j in combinations(range(len(segs)), 2):
        oi, ji, a, b = segs[i]
        oj, jj, c, d = segs[j]
        if oi == oj:
            continue
        hit = segment_intersection(a, b, c, d)
        if hit is None:
            continue
        if hit[0] != "cross":
            raise DegeneratePosition(
                f"{hit[0]} between edge {ji} of obstacle {oi} and edge {jj} of obstacle {oj}")
        pt = hit[1]
        if pt in crossings:
            k1, k2 = crossings[pt]
            raise DegeneratePosition(
                f"three boundaries meet at {_fmt(pt)} (segments {k1}, {k2}, {i}, {j})")
        crossings[pt] = (i, j)
        cuts[i].append(pt)
        cuts[j].append(pt)

    vid: dict[tuple, int] = {}
    vertices: list[tuple[Fraction, Fraction]] = []

    def vertex(p):
        key = (Fraction(p[0]), Fraction(p[1]))
        if key not in vid:
            vid[key] = len(vertices)
            vertices.append(key)
        return vid[key]

    # canonical vertex numbering: polygon corners first, crossings in sorted order
    for ob in obstacles:
        for p in ob.points:
            vertex(p)
    for pt in sorted(crossings):
        vertex(pt)

    edges = []
    for i, (oid, _, a, b) in enumerate(segs):
        along = sorted(cuts[i], key=lambda p: (p[0] - a[0]) * (b[0] - a[0]) + (p[1] - a[1]) * (b[1] - a[1]))
        chain = [vertex(a), *(vertex(p) for p in along), vertex(b)]
        for x, y in zip(chain, chain[1:]):
            edges.append((min(x, y), max(x, y), oid))
    edges.sort()

    adj: list[list[int]] = [[] for _ in vertices]
    for a, b, _ in edges:
        adj[a].append(b)
        adj[b].append(a)
    rotation = rotation_from_coordinates(vertices, adj)
    faces, dart_face = _faces(vertices, rotation)
    arr = Arrangement(vertices, edges, rotation, faces, dart_face, tuple(obstacles))
    for f in range(len(faces)):
        faces[f].sample = _sample_point(arr, f)
    return arr


def _fmt(p) -> str:
    return "(" + ", ".join(str(c) for c in p) + ")"


def _faces(vertices, rotation):
    pos = [{w: i for i, w in enumerate(r)} for r in rotation]

    def nxt(d):
        u, w = d
        r = rotation[w]
        return (w, r[(pos[w][u] + 1) % len(r)])

    seen = set()
    cycles = []
    for u in range(len(vertices)):
        for w in rotation[u]:
            d = (u, w)
            if d in seen:
                continue
            cyc = []
            while d not in seen:
                seen.add(d)
                cyc.append(d)
                d = nxt(d)
            cycles.append(cyc)

    def poly(cyc):
        return [vertices[a] for a, _ in cyc]

    inner = [c for c in cycles if signed_area2(poly(c)) < 0]
    outer = [c for c in cycles if signed_area2(poly(c)) > 0]
    faces = [Face([], False)] + [Face([c], True) for c in inner]
    vcomp = _cycle_components(vertices, rotation)
    inner_info = [(abs(signed_area2(poly(c))), poly(c), vcomp[c[0][0]]) for c in inner]
    for c in outer:
        probe = vertices[c[0][0]]
        comp = vcomp[c[0][0]]
        best, best_area = 0, None
        for fi, (area, pg, other) in enumerate(inner_info, start=1):
            if other == comp:
                continue
            if (best_area is None or area < best_area) and point_in_polygon(probe, pg):
                best, best_area = fi, area
        faces[best].cycles.append(c)
    dart_face = {d: f for f, face in enumerate(faces) for cyc in face.cycles for d in cyc}
    return faces, dart_face


def _cycle_components(vertices, rotation):
    comp = [-1] * len(vertices)
    for v in range(len(vertices)):
        if comp[v] >= 0:
            continue
        stack = [v]
        comp[v] = v
        while stack:
            u = stack.pop()
            for w in rotation[u]:
                if comp[w] < 0:
                    comp[w] = v
                    stack.append(w)
    return comp


def _sample_point(arr: Arrangement, f: int):
    """An exact point strictly inside face f.

    Cuts the face with a horizontal line through the middle of one of its
    non-horizontal boundary edges, at a height no vertex has, and takes the
    midpoint of the interval next to that edge on the face's side (faces lie
    to the right of their darts).
    """
    face = arr.faces[f]
    darts = [d for cyc in face.cycles for d in cyc]
    if not darts:
        return (Fraction(0), Fraction(0))
    V = arr.vertices
    ys = sorted({p[1] for p in V})
    a, b = next((a, b) for a, b in darts if V[a][1] != V[b][1])
    lo, hi = sorted((V[a][1], V[b][1]))
    i = ys.index(lo)
    y0 = (ys[i] + ys[i + 1]) / 2
    xs = []
    for p, q, _ in arr.edges:
        P, Q = V[p], V[q]
        if (P[1] < y0) != (Q[1] < y0):
            x = P[0] + (y0 - P[1]) * (Q[0] - P[0]) / (Q[1] - P[1])
            xs.append((x, (p, q)))
    xs.sort()
    key = (min(a, b), max(a, b))
    at = next(j for j, (_, e) in enumerate(xs) if e == key)
    x = xs[at][0]
    if V[b][1] > V[a][1]:       # dart heads up: face on the east side
        x2 = xs[at + 1][0] if at + 1 < len(xs) else x + 2
    else:
        x2 = xs[at - 1][0] if at > 0 else x - 2
    return ((x + x2) / 2, y0)


def point_locate(arr: Arrangement, point: Point) -> int:
    p = (Fraction(point[0]), Fraction(point[1]))
    V = arr.vertices
    for a, b, _ in arr.edges:
        if on_segment(p, V[a], V[b]):
            raise OnBoundary(f"point {_fmt(point)} lies on an obstacle boundary; perturb it")
    best, best_area = 0, None
    for f, face in enumerate(arr.faces):
        if not face.bounded:
            continue
        pg = [V[a] for a, _ in face.cycles[0]]
        area = abs(signed_area2(pg))
        if (best_area is None or area < best_area) and point_in_polygon(p, pg):
            best, best_area = f, area
    return best


def face_colors(arr: Arrangement, f: int) -> frozenset[int]:
    p = arr.faces[f].sample
    return frozenset(ob.id for ob in arr.obstacles if point_in_polygon(p, ob.points))


# -- dual ----------------------------------------------------------------------------

@dataclasses.dataclass
class DualResult:
    instance: Instance
    arrangement: Arrangement
    face_of_vertex: list[int | None]     # None for an added terminal vertex


def dual_graph(arr: Arrangement, colors: Sequence[frozenset[int]]) -> ColoredPlaneGraph:
    """Dual with one vertex per face and one edge per adjacent face pair.

    The rotation at a face lists the faces across its boundary darts in
    reverse traversal order; for a pair of faces sharing several arrangement
    edges only the lowest-numbered edge is kept, on both sides.
    """
    edge_id = {(a, b): i for i, (a, b, _) in enumerate(arr.edges)}
    keep: dict[tuple[int, int], int] = {}
    for (a, b), i in edge_id.items():
        f, g = arr.dart_face[(a, b)], arr.dart_face[(b, a)]
        if f == g:
            raise GeometryError("arrangement edge with the same face on both sides")
        pair = (min(f, g), max(f, g))
        keep[pair] = min(keep.get(pair, i), i)
    rotation = []
    for f, face in enumerate(arr.faces):
        rot: list[int] = []
        for cyc in face.cycles:
            seq = []
            for a, b in cyc:
                g = arr.dart_face[(b, a)]
                if keep[(min(f, g), max(f, g))] == edge_id[(min(a, b), max(a, b))]:
                    seq.append(g)
            rot.extend(reversed(seq))
        rotation.append(tuple(rot))
    return ColoredPlaneGraph(tuple(colors), tuple(rotation))


def dualize(geo: GeometricInstance) -> DualResult:
    """Colored dual instance of an obstacle scene.

    When s and t fall into the same face, t becomes an extra empty vertex
    hanging off that face so that the instance keeps distinct terminals.
    """
    arr = build_arrangement(geo.obstacles)
    colors = [face_colors(arr, f) for f in range(len(arr.faces))]
    g = dual_graph(arr, colors)
    fs = point_locate(arr, geo.s)
    ft = point_locate(arr, geo.t)
    color_count = max((ob.id for ob in geo.obstacles), default=-1) + 1
    face_of_vertex: list[int | None] = list(range(len(arr.faces)))
    t = ft
    if fs == ft:
        t = g.n
        rotation = list(g.rotation)
        rotation[fs] = rotation[fs] + (t,)
        rotation.append((fs,))
        g = ColoredPlaneGraph(g.colors + (frozenset(),), tuple(rotation))
        face_of_vertex.append(None)
    inst = Instance(g, fs, t, geo.k, color_count)
    return DualResult(inst, arr, face_of_vertex)
