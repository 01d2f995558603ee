"""Deterministic instance generators and named small fixtures."""

from __future__ import annotations

import random

from .geometry import GeometricInstance, Obstacle, rotation_from_coordinates
from .graph import ColoredPlaneGraph, Instance


class GeneratorError(ValueError):
    pass


def diamond(k: int = 1) -> Instance:
    """s=0, a=1, b=2, t=3 with s-a-t and s-b-t; a carries color 1, b color 2."""
    colors = [(), (1,), (2,), ()]
    g = ColoredPlaneGraph.from_edges(colors, [(0, 1), (1, 3), (0, 2), (2, 3)])
    return Instance(g, 0, 3, k, 3)


def short_path(k: int = 1) -> Instance:
    """s-x-y-t where x and y share color 1."""
    g = ColoredPlaneGraph.from_edges([(), (1,), (1,), ()], [(0, 1), (1, 2), (2, 3)])
    return Instance(g, 0, 3, k, 2)


def profile_path(k: int = 6) -> Instance:
    """Eleven-vertex path whose prefixes grow through five colors."""
    a, b, c, d, e = 1, 2, 3, 4, 5
    colors = [(), (a,), (a,), (a,), (a,), (b, c), (c,), (d,), (d,), (e,), ()]
    g = ColoredPlaneGraph.from_edges(colors, [(i, i + 1) for i in range(10)])
    return Instance(g, 0, 10, k, 6)


def star(m: int, k: int = 1) -> Instance:
    """s joined to a hub v through m spokes x_1..x_m, x_j colored {j}; t hangs off v.

    Vertex ids: s=0, x_j=j, v=m+1, t=m+2.
    """
    if m < 1:
        raise GeneratorError("star needs at least one spoke")
    s, v, t = 0, m + 1, m + 2
    colors = [()] + [(j,) for j in range(1, m + 1)] + [(), ()]
    rotation = [None] * (m + 3)
    rotation[s] = tuple(range(1, m + 1))
    for j in range(1, m + 1):
        rotation[j] = (s, v)
    # reverse order at v keeps the embedding planar; t sits between x_m and x_1
    rotation[v] = tuple(range(m, 0, -1)) + (t,)
    rotation[t] = (v,)
    g = ColoredPlaneGraph(tuple(frozenset(c) for c in colors), tuple(rotation))
    return Instance(g, s, t, k, m + 1)


def square(id_: int, x0: int, y0: int, x1: int, y1: int) -> Obstacle:
    return Obstacle(id_, ((x0, y0), (x1, y0), (x1, y1), (x0, y1)))


def rings(q: int, k: int | None = None) -> GeometricInstance:
    """q nested squares around the origin; s at the center, t outside all of them."""
    obstacles = tuple(square(i, -10 * (q - i), -10 * (q - i), 10 * (q - i), 10 * (q - i))
                      for i in range(q))
    return GeometricInstance(obstacles, (1, 1), (10 * q + 7, 3), q if k is None else k)


def grid(rows: int, cols: int, colors: int, seed: int, k: int = 3,
         diagonals: bool = False) -> Instance:
    """Grid graph whose color classes are grown as connected blobs.

    Each color picks a random seed vertex and expands over random grid
    neighbours, so every color class induces a connected subgraph.  The two
    corners are the terminals and stay uncolored.
    """
    if rows < 1 or cols < 2:
        raise GeneratorError("grid needs at least one row and two columns")
    if colors < 0:
        raise GeneratorError("color count must be non-negative")
    rng = random.Random(seed)
    n = rows * cols

    def vid(r, c):
        return r * cols + c

    coords = [(c, -r) for r in range(rows) for c in range(cols)]
    edges = set()
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.add((vid(r, c), vid(r, c + 1)))
            if r + 1 < rows:
                edges.add((vid(r, c), vid(r + 1, c)))
            if diagonals and r + 1 < rows and c + 1 < cols and rng.random() < 0.3:
                if rng.random() < 0.5:
                    edges.add((vid(r, c), vid(r + 1, c + 1)))
                else:
                    edges.add((vid(r, c + 1), vid(r + 1, c)))
    adj = [[] for _ in range(n)]
    for a, b in sorted(edges):
        adj[a].append(b)
        adj[b].append(a)
    s, t = 0, n - 1
    chi: list[set[int]] = [set() for _ in range(n)]
    inner = [x for x in range(n) if x not in (s, t)]
    for color in range(colors):
        if not inner:
            break
        start = rng.choice(inner)
        size = rng.randint(1, max(1, n // 3))
        blob = {start}
        frontier = [w for w in adj[start] if w not in (s, t)]
        while len(blob) < size and frontier:
            w = frontier.pop(rng.randrange(len(frontier)))
            if w in blob:
                continue
            blob.add(w)
            frontier.extend(x for x in adj[w] if x not in blob and x not in (s, t))
        for x in blob:
            chi[x].add(color)
    rotation = rotation_from_coordinates(coords, adj)
    g = ColoredPlaneGraph(tuple(frozenset(c) for c in chi), tuple(tuple(r) for r in rotation))
    return Instance(g, s, t, k, colors)


def scene(polygons: int, seed: int, k: int = 2, size: int = 60,
          max_tries: int = 200) -> GeometricInstance:
    """Random obstacle scene in general position.

    Obstacles are random star-shaped polygons; a draw is rejected and redrawn
    when it creates a degenerate contact with earlier obstacles or puts a
    terminal on a boundary.
    """
    from .geometry import GeometryError, build_arrangement, point_locate

    rng = random.Random(seed)
    for _ in range(max_tries):
        obstacles: list[Obstacle] = []
        for oid in range(polygons):
            for _ in range(max_tries):
                cand = obstacles + [_random_polygon(rng, oid, size)]
                try:
                    build_arrangement(cand)
                except GeometryError:
                    continue
                obstacles = cand
                break
            else:
                raise GeneratorError("could not place obstacles in general position")
        s = (rng.randrange(-size, size) * 2 + 1, rng.randrange(-size, size) * 2 + 1)
        t = (rng.randrange(-size, size) * 2 + 1, rng.randrange(-size, size) * 2 + 1)
        if s == t:
            continue
        arr = build_arrangement(obstacles)
        try:
            point_locate(arr, s)
            point_locate(arr, t)
        except GeometryError:
            continue
        return GeometricInstance(tuple(obstacles), s, t, k)
    raise GeneratorError("could not place terminals")


def _random_polygon(rng: random.Random, oid: int, size: int) -> Obstacle:
    import math

    cx, cy = rng.randint(-size, size) * 2, rng.randint(-size, size) * 2
    count = rng.randint(3, 6)
    base = rng.uniform(0, 2 * math.pi)
    angles = sorted(base + rng.uniform(0, 2 * math.pi) for _ in range(count))
    pts = []
    for a in angles:
        r = rng.randint(size // 4, size)
        p = (cx + round(r * math.cos(a)) * 2, cy + round(r * math.sin(a)) * 2)
        if p not in pts:
            pts.append(p)
    if len(pts) < 3:
        return _random_polygon(rng, oid, size)
    return Obstacle(oid, tuple(pts))


def relabel(inst: Instance, perm) -> Instance:
    """Same instance with vertex v renamed perm[v]."""
    n = inst.n
    colors = [None] * n
    rotation = [None] * n
    for v in range(n):
        colors[perm[v]] = inst.graph.colors[v]
        rotation[perm[v]] = tuple(perm[w] for w in inst.graph.rotation[v])
    g = ColoredPlaneGraph(tuple(colors), tuple(rotation))
    return Instance(g, perm[inst.s], perm[inst.t], inst.k, inst.color_count)
