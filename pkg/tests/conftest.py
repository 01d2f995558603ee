import pytest

from colorpath import generators as gen
from colorpath.graph import ColoredPlaneGraph, Instance


@pytest.fixture
def diamond():
    return gen.diamond()


@pytest.fixture
def short_path():
    return gen.short_path()


@pytest.fixture
def profile_path():
    return gen.profile_path()


def grid_graph(rows, cols, colors=None):
    """Plain grid with coordinate rotation; ids row-major."""
    from colorpath.geometry import rotation_from_coordinates

    n = rows * cols
    coords = [(c, -r) for r in range(rows) for c in range(cols)]
    adj = [[] for _ in range(n)]
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                adj[v].append(v + 1)
                adj[v + 1].append(v)
            if r + 1 < rows:
                adj[v].append(v + cols)
                adj[v + cols].append(v)
    rot = rotation_from_coordinates(coords, adj)
    cs = colors or [()] * n
    return ColoredPlaneGraph(tuple(frozenset(c) for c in cs), tuple(tuple(r) for r in rot))


def small_grids(count, max_vertices=16, max_colors=8, max_k=3, seed0=0):
    """Deterministic stream of small random grid instances."""
    out = []
    seed = seed0
    while len(out) < count:
        rows, cols = 2 + seed % 3, 2 + (seed // 3) % 4
        if rows * cols <= max_vertices:
            out.append(gen.grid(rows, cols, 1 + seed % max_colors, seed, k=1 + seed % max_k,
                                diagonals=seed % 2 == 0))
        seed += 1
    return out


def hub_gadget(paths=40, hubs=1, k=1):
    """s - x_j - h_1 - ... - h_r - v for j < paths, t hanging off v; x_j has color j.

    Returns the instance and the s-v routes through every hub.
    """
    s, v, t = 0, 1, 2
    chain = list(range(3, 3 + hubs))
    colors = [()] * (3 + hubs)
    edges = [(v, t)] + list(zip(chain, chain[1:])) + [(chain[-1], v)]
    routes = []
    for j in range(paths):
        x = len(colors)
        colors.append((j,))
        edges += [(s, x), (x, chain[0])]
        routes.append((s, x, *chain, v))
    g = ColoredPlaneGraph.from_edges(colors, edges)
    return Instance(g, s, t, k, paths), routes


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
