"""Deterministic SVG drawings of colored graphs and obstacle arrangements."""

from __future__ import annotations

import hashlib
from typing import Sequence

from .geometry import Arrangement
from .graph import Instance

WIDTH = 640
MARGIN = 30


def color_fill(colors: frozenset[int]) -> str:
    if not colors:
        return "#ffffff"
    digest = hashlib.sha1(",".join(map(str, sorted(colors))).encode()).digest()
    r, g, b = (128 + digest[i] // 2 for i in range(3))
    return f"#{r:02x}{g:02x}{b:02x}"


def _num(x) -> str:
    return f"{float(x):.2f}"


class _Frame:
    """Maps model coordinates into the drawing box, flipping y."""

    def __init__(self, points):
        xs = [float(p[0]) for p in points] or [0.0]
        ys = [float(p[1]) for p in points] or [0.0]
        self.x0, self.y1 = min(xs), max(ys)
        span = max(max(xs) - self.x0, self.y1 - min(ys), 1e-9)
        self.scale = (WIDTH - 2 * MARGIN) / span

    def __call__(self, p):
        return (MARGIN + (float(p[0]) - self.x0) * self.scale,
                MARGIN + (self.y1 - float(p[1])) * self.scale)


def _header() -> list[str]:
    return [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{WIDTH}" '
            f'viewBox="0 0 {WIDTH} {WIDTH}">',
            f'<rect x="0" y="0" width="{WIDTH}" height="{WIDTH}" fill="#fafafa"/>']


def instance_layout(inst: Instance) -> list[tuple[float, float]]:
    import networkx as nx

    g = inst.graph
    emb = nx.PlanarEmbedding()
    emb.add_nodes_from(range(g.n))
    for v in range(g.n):
        ref = None
        for w in g.rotation[v]:
            emb.add_half_edge(v, w, ccw=ref) if ref is not None else emb.add_half_edge_first(v, w)
            ref = w
    try:
        pos = nx.combinatorial_embedding_to_pos(emb)
    except (nx.NetworkXException, KeyError, IndexError):
        pos = nx.planar_layout(nx.Graph(emb.to_undirected()))
    return [tuple(map(float, pos[v])) for v in range(g.n)]


def render_instance(inst: Instance, path: Sequence[int] | None = None) -> str:
    g = inst.graph
    pos = instance_layout(inst)
    frame = _Frame(pos)
    xy = [frame(p) for p in pos]
    out = _header()
    out.append('<g class="edges" stroke="#555" stroke-width="1.5">')
    for u, w in g.edges():
        out.append(f'<line x1="{_num(xy[u][0])}" y1="{_num(xy[u][1])}" '
                   f'x2="{_num(xy[w][0])}" y2="{_num(xy[w][1])}"/>')
    out.append("</g>")
    if path:
        pts = " ".join(f"{_num(xy[v][0])},{_num(xy[v][1])}" for v in path)
        out.append(f'<polyline class="solution" points="{pts}" fill="none" '
                   f'stroke="#d62728" stroke-width="4" stroke-opacity="0.8"/>')
    out.append('<g class="nodes" stroke="#222">')
    for v in range(g.n):
        stroke = ' stroke-width="3"' if v in (inst.s, inst.t) else ""
        label = ",".join(map(str, sorted(g.colors[v])))
        out.append(f'<circle cx="{_num(xy[v][0])}" cy="{_num(xy[v][1])}" r="9" '
                   f'fill="{color_fill(g.colors[v])}"{stroke}><title>{v}: {{{label}}}</title></circle>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_arrangement(arr: Arrangement, path_points: Sequence | None = None,
                       colors: Sequence[frozenset[int]] | None = None) -> str:
    """Faces filled by their color set, obstacle edges on top.

    `path_points` is an optional polyline (for example the sample points of
    the faces along a solution).
    """
    if colors is None:
        from .geometry import face_colors
        colors = [face_colors(arr, f) for f in range(len(arr.faces))]
    frame = _Frame(list(arr.vertices) + list(path_points or []))
    out = _header()
    out.append('<g class="faces" fill-rule="evenodd" stroke="none">')
    for f, face in enumerate(arr.faces):
        d = "" if face.bounded else f"M 0 0 L {WIDTH} 0 L {WIDTH} {WIDTH} L 0 {WIDTH} Z "
        d += " ".join("M " + " L ".join(f"{_num(x)} {_num(y)}" for x, y in map(frame, poly)) + " Z"
                     for poly in arr.face_polygons(f))
        out.append(f'<path class="face" data-face="{f}" d="{d}" fill="{color_fill(colors[f])}"/>')
    out.append("</g>")
    out.append('<g class="edges" stroke="#333" stroke-width="1">')
    for a, b, _ in arr.edges:
        (x1, y1), (x2, y2) = frame(arr.vertices[a]), frame(arr.vertices[b])
        out.append(f'<line x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" y2="{_num(y2)}"/>')
    out.append("</g>")
    if path_points:
        pts = " ".join(f"{_num(x)},{_num(y)}" for x, y in map(frame, path_points))
        out.append(f'<polyline class="solution" points="{pts}" fill="none" '
                   f'stroke="#d62728" stroke-width="3"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
