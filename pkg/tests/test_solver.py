import io
import json
import random

import pytest

from colorpath import generators as gen
from colorpath.graph import (
    BudgetExhausted,
    ColoredPlaneGraph,
    Instance,
    colors_of,
    is_path,
    normalize_terminals,
    set_key,
)
from colorpath.oracle import oracle_solve
from colorpath.pruning import prune_family
from colorpath.reachability import ReachCache, characteristic_vector, reachable_set
from colorpath.solver import InvalidInstance, Solution, SolverConfig, extend_families, solve, threshold



def fs(*xs):
    return frozenset(xs)


def test_threshold_monotone():
    values = [threshold(k) for k in range(7)]
    assert values == sorted(values)
    assert threshold(0) == 2


def test_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(threshold=0)
    with pytest.raises(ValueError):
        SolverConfig(threshold="huge")
    assert SolverConfig(threshold="inf").bound(3, 2) == float("inf")
    assert SolverConfig(threshold=10).bound(3, 2) == 10


def test_early_solution(diamond):
    fam, early = extend_families(diamond, [[fs()]], 1)
    assert early == (0, 1, 3)


def test_singletons_without_solution():
    # s - a{1} - b{2} - t: no single color suffices
    g = ColoredPlaneGraph.from_edges([(), (1,), (2,), ()], [(0, 1), (1, 2), (2, 3)])
    inst = Instance(g, 0, 3, 2, 3)
    fam, early = extend_families(inst, [[fs()]], 1)
    assert early is None and fam == [fs(1), fs(2)]


def test_duplicate_colors_counted_once():
    g = ColoredPlaneGraph.from_edges([(), (1,), (1,), (2,), ()],
                                     [(0, 1), (1, 2), (2, 3), (3, 4)])
    inst = Instance(g, 0, 4, 2, 3)
    fam, _ = extend_families(inst, [[fs()]], 1)
    assert fam == [fs(1), fs(2)]


def test_solve_diamond(diamond):
    sol = solve(diamond)
    assert sol.is_yes and sol.path in ((0, 1, 3), (0, 2, 3)) and len(sol.colors) == 1
    assert solve(diamond.replace(k=0)).verdict == "NO"


def test_solution_format():
    assert Solution.yes((0, 1, 3), {1}).format() == "YES\n0 1 3\n1\n"
    assert Solution.no().format() == "NO\n"


def test_invalid_instance_rejected(diamond):
    g = diamond.graph.with_colors((fs(), fs(1), fs(1), fs()))
    with pytest.raises(InvalidInstance):
        solve(diamond.replace(graph=g))


def test_trace_lines():
    buf = io.StringIO()
    solve(gen.grid(4, 4, 8, 3, k=3), SolverConfig(trace=buf))
    records = [json.loads(line) for line in buf.getvalue().splitlines()]
    assert records and all(set(r) == {"round", "extended", "kept", "prunes"} for r in records)


def test_zero_color_path():
    inst = gen.grid(2, 3, 0, 1, k=0)
    sol = solve(inst)
    assert sol.is_yes and sol.colors == frozenset()


@pytest.mark.parametrize("seed", range(200))
def test_matches_oracle(seed):
    rng = random.Random(seed)
    rows, cols = rng.randint(2, 5), rng.randint(2, 6)
    inst = gen.grid(rows, cols, rng.randint(1, 10), seed, k=rng.randint(0, 4),
                    diagonals=rng.random() < 0.5)
    sol = solve(inst)
    assert sol.verdict == oracle_solve(inst).verdict
    if sol.is_yes:
        assert is_path(inst.graph, sol.path) and sol.path[0] == inst.s and sol.path[-1] == inst.t
        assert len(colors_of(inst.graph, sol.path)) <= inst.k


def test_parallel_run_is_identical():
    inst = gen.grid(5, 6, 10, 11, k=4)
    one = solve(inst, SolverConfig(threshold=10))
    two = solve(inst, SolverConfig(threshold=10, jobs=2))
    assert (one.verdict, one.path, one.rounds) == (two.verdict, two.path, two.rounds)


@pytest.mark.parametrize("seed", range(60))
def test_family_bounds(seed):
    inst = gen.grid(2 + seed % 4, 2 + seed % 5, 1 + seed % 10, seed, k=seed % 5)
    sol = solve(inst, SolverConfig(threshold=2))
    for r in sol.rounds:
        if r["kept"] is not None:
            assert r["kept"] <= inst.n * min(2, r["extended"])


# -- captures on tiny instances ---------------------------------------------------

def _simple_paths(inst):
    g = inst.graph
    out = []

    def dfs(path):
        u = path[-1]
        if u == inst.t:
            out.append(tuple(path))
            return
        for w in g.sorted_adjacency[u]:
            if w not in path:
                dfs(path + [w])

    dfs([inst.s])
    return out


def _families(inst, bound):
    cache = ReachCache(inst)
    families = [[fs()]]
    for i in range(1, inst.k + 1):
        cand, early = extend_families(inst, families, i, cache)
        if early:
            break
        kept = set()
        for v in range(inst.n):
            kept.update(prune_family(inst, cand, v, bound, cache)[0])
        families.append(sorted(kept, key=set_key))
    return families


def _captures(inst, p, path, cut):
    g = inst.graph
    prefix, suffix = path[:cut + 1], path[cut:]
    v = path[cut]
    reach = reachable_set(inst, p)
    if v not in reach or any(v in reachable_set(inst, p - {c}) for c in p):
        return False
    suffix_colors = colors_of(g, suffix)
    if len(p | suffix_colors) > inst.k:
        return False
    if any(w in reach for w in suffix[1:] if w != v):
        return False
    return colors_of(g, prefix) & suffix_colors <= p


@pytest.mark.parametrize("seed", range(80))
def test_minimum_vector_path_is_captured(seed):
    inst = gen.grid(3, 4, 4 + seed % 5, seed, k=3)
    try:
        inst, _, early = normalize_terminals(inst)
    except BudgetExhausted:
        return
    if early:
        return
    valid = [p for p in _simple_paths(inst) if len(colors_of(inst.graph, p)) <= inst.k]
    if not valid:
        return
    families = _families(inst, 1)
    vectors = {p: characteristic_vector(inst, p) for p in valid}
    best = min(vectors.values())
    for path in (p for p, vec in vectors.items() if vec == best):
        entries = tuple(best)
        for i in range(1, len(families)):
            cut = len(path) - 1 - entries[i]
            if len(colors_of(inst.graph, path[:cut + 1])) != i:
                continue
            assert any(_captures(inst, p, path, cut) for p in families[i]), (path, i)
