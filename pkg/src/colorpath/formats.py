"""Text formats: `cpg` graphs, `obs` obstacle scenes, and solutions."""

from __future__ import annotations

from .geometry import GeometricInstance, Obstacle
from .graph import ColoredPlaneGraph, GraphError, Instance, planar_rotation, validate_instance


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _ints(tokens, lineno):
    try:
        return [int(x) for x in tokens]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _expect_header(lines, name: str):
    try:
        lineno, toks = next(lines)
    except StopIteration:
        raise FormatError("empty input") from None
    if toks != [name, "1"]:
        raise FormatError(f"expected header '{name} 1'", lineno)


def parse_cpg(text: str, validate: bool = True) -> Instance:
    lines = _lines(text)
    _expect_header(lines, "cpg")
    n = m = c = k = s = t = None
    colors: dict[int, frozenset[int]] = {}
    edges: list[tuple[int, int]] = []
    rotation: dict[int, tuple[int, ...]] = {}
    last = 1
    for lineno, toks in lines:
        last = lineno
        head, args = toks[0], toks[1:]
        if head == "n":
            if len(args) != 7 or args[1::2] != ["m", "c", "k"]:
                raise FormatError("expected 'n <N> m <M> c <C> k <K>'", lineno)
            n, m, c, k = _ints(args[0::2], lineno)
            if min(n, m, c, k) < 0:
                raise FormatError("sizes must be non-negative", lineno)
        elif head in ("s", "t"):
            if len(args) != 1:
                raise FormatError(f"expected '{head} <id>'", lineno)
            val = _ints(args, lineno)[0]
            if head == "s":
                s = val
            else:
                t = val
        elif head == "v":
            ids = _ints(args, lineno)
            if not ids:
                raise FormatError("expected 'v <id> <color>*'", lineno)
            v, cs = ids[0], ids[1:]
            if v in colors:
                raise FormatError(f"vertex {v} declared twice", lineno)
            if c is not None and any(not 0 <= x < c for x in cs):
                raise FormatError(f"color id out of range 0..{c - 1}", lineno)
            colors[v] = frozenset(cs)
        elif head == "e":
            ids = _ints(args, lineno)
            if len(ids) != 2:
                raise FormatError("expected 'e <u> <w>'", lineno)
            edges.append((ids[0], ids[1]))
        elif head == "r":
            ids = _ints(args, lineno)
            if not ids:
                raise FormatError("expected 'r <id> <neighbor>*'", lineno)
            if ids[0] in rotation:
                raise FormatError(f"rotation for {ids[0]} given twice", lineno)
            rotation[ids[0]] = tuple(ids[1:])
        else:
            raise FormatError(f"unknown directive {head!r}", lineno)
    if n is None:
        raise FormatError("missing size line", last)
    if s is None or t is None:
        raise FormatError("missing s or t line", last)
    if sorted(colors) != list(range(n)):
        raise FormatError(f"expected vertex lines for ids 0..{n - 1}", last)
    if len(edges) != m:
        raise FormatError(f"expected {m} edges, found {len(edges)}", last)
    for u, w in edges:
        if not (0 <= u < n and 0 <= w < n) or u == w:
            raise FormatError(f"bad edge ({u}, {w})", last)
    if len({frozenset(e) for e in edges}) != m:
        raise FormatError("duplicate edge", last)
    if not (0 <= s < n and 0 <= t < n):
        raise FormatError("terminal out of range", last)
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, w in edges:
        adj[u].append(w)
        adj[w].append(u)
    if rotation:
        if sorted(rotation) != list(range(n)):
            raise FormatError("rotation block must list every vertex", last)
        for v in range(n):
            if sorted(rotation[v]) != sorted(adj[v]):
                raise FormatError(f"rotation of {v} does not match its edges", last)
        rot = [rotation[v] for v in range(n)]
    else:
        rot = planar_rotation(n, adj)      # raises NonPlanarError
    g = ColoredPlaneGraph(tuple(colors[v] for v in range(n)), tuple(tuple(r) for r in rot))
    inst = Instance(g, s, t, k, c)
    if validate:
        problems = validate_instance(inst)
        if problems:
            raise GraphError("; ".join(problems))
    return inst


def serialize_cpg(inst: Instance, rotation: bool = True) -> str:
    g = inst.graph
    edges = g.edges()
    out = ["cpg 1", f"n {g.n} m {len(edges)} c {inst.color_count} k {inst.k}",
           f"s {inst.s}", f"t {inst.t}"]
    out += [" ".join(["v", str(v), *map(str, sorted(g.colors[v]))]) for v in range(g.n)]
    out += [f"e {u} {w}" for u, w in edges]
    if rotation:
        out += [" ".join(["r", str(v), *map(str, g.rotation[v])]) for v in range(g.n)]
    return "\n".join(out) + "\n"


def parse_obs(text: str) -> GeometricInstance:
    lines = _lines(text)
    _expect_header(lines, "obs")
    k = s = t = None
    obstacles: list[Obstacle] = []
    last = 1
    for lineno, toks in lines:
        last = lineno
        head, args = toks[0], _ints(toks[1:], lineno)
        if head == "k":
            if len(args) != 1 or args[0] < 0:
                raise FormatError("expected 'k <K>' with K >= 0", lineno)
            k = args[0]
        elif head in ("s", "t"):
            if len(args) != 2:
                raise FormatError(f"expected '{head} <x> <y>'", lineno)
            if head == "s":
                s = tuple(args)
            else:
                t = tuple(args)
        elif head == "p":
            if len(args) < 2 or len(args) != 2 + 2 * args[1]:
                raise FormatError("expected 'p <id> <n> <x1> <y1> ... <xn> <yn>'", lineno)
            pts = tuple(zip(args[2::2], args[3::2]))
            obstacles.append(Obstacle(args[0], pts))
        else:
            raise FormatError(f"unknown directive {head!r}", lineno)
    if k is None or s is None or t is None:
        raise FormatError("missing k, s or t line", last)
    return GeometricInstance(tuple(obstacles), s, t, k)


def serialize_obs(geo: GeometricInstance) -> str:
    out = ["obs 1", f"k {geo.k}", f"s {geo.s[0]} {geo.s[1]}", f"t {geo.t[0]} {geo.t[1]}"]
    for ob in geo.obstacles:
        coords = " ".join(f"{x} {y}" for x, y in ob.points)
        out.append(f"p {ob.id} {len(ob.points)} {coords}")
    return "\n".join(out) + "\n"


def parse_solution(text: str):
    """Returns (verdict, path or None, colors or None)."""
    lines = [ln.strip() for ln in text.splitlines()]
    if not lines or lines[0] not in ("YES", "NO"):
        raise FormatError("first line must be YES or NO", 1)
    if lines[0] == "NO":
        return "NO", None, None
    if len(lines) < 3:
        raise FormatError("YES needs a path line and a colors line", len(lines))
    path = tuple(_ints(lines[1].split(), 2))
    colors = frozenset(_ints(lines[2].split(), 3))
    return "YES", path, colors


def sniff(text: str) -> str:
    for _, toks in _lines(text):
        return toks[0]
    return ""
