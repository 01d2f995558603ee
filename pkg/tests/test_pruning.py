from math import factorial

import pytest

from colorpath import generators as gen
from colorpath.audit import audit_removals
from colorpath.graph import BudgetExhausted, normalize_terminals
from colorpath.oracle import enumerate_walks_avoiding
from colorpath.pruning import (
    PROPER_SUBSET,
    UNMARKED_PATH,
    HubBoundViolation,
    PruneCertificate,
    dump_certificates,
    f_refine,
    find_irrelevant,
    pick_unmarked,
    prune_family,
    recheck_certificate,
    refine_factor,
    refine_paths,
    select_consistent_order,
    strip_core,
)
from colorpath.reachability import ReachCache, reachable_set
from colorpath.solver import extend_families

from conftest import hub_gadget, small_grids


def fs(*xs):
    return frozenset(xs)


def star_paths(m):
    return [(0, j, m + 1) for j in range(1, m + 1)]


def singletons(m):
    return [fs(j) for j in range(1, m + 1)]


def test_strip_core_pairs(diamond):
    reduced, petals, lift = strip_core(diamond.replace(k=2), [fs(1, 2), fs(1, 3)], fs(1))
    assert petals == [fs(2), fs(3)] and reduced.k == 1
    assert lift[fs(2)] == fs(1, 2)


def test_strip_empty_core_is_identity(diamond):
    reduced, petals, lift = strip_core(diamond, [fs(1), fs(2)], fs())
    assert reduced == diamond and petals == [fs(1), fs(2)]


def test_strip_core_transfers_reachability():
    # 6 vertices: s - a{1,2} - v and s - b{1,3} - c{1} - v, t off v
    from colorpath.graph import ColoredPlaneGraph, Instance
    g = ColoredPlaneGraph.from_edges([(), (1, 2), (1, 3), (1,), (), ()],
                                     [(0, 1), (1, 4), (0, 2), (2, 3), (3, 4), (4, 5)])
    inst = Instance(g, 0, 5, 3, 4)
    reduced, petals, _ = strip_core(inst, [fs(1, 2), fs(1, 3)], fs(1))
    for before, after in zip([fs(1, 2), fs(1, 3)], petals):
        assert (4 in reachable_set(inst, before)) == (4 in reachable_set(reduced, after))


def test_strip_core_budget():
    with pytest.raises(ValueError):
        strip_core(gen.diamond(k=0), [fs(1)], fs(1))


def test_refine_star():
    res = refine_paths(star_paths(25), 1, exclude=(0, 26))
    assert res.hubs == () and len(res.paths) == 25


@pytest.mark.parametrize("count", [38, 40, 60])
def test_refine_single_hub(count):
    _, routes = hub_gadget(count)
    res = refine_paths(routes, 1, exclude=(0, 1))
    assert res.hubs == (3,) and len(res.paths) == count


def test_refine_below_hub_threshold_keeps_going():
    # 30 routes: after taking the hub, a single route already counts as popular
    _, routes = hub_gadget(30)
    assert len(refine_paths(routes, 1, exclude=(0, 1)).hubs) > 1


@pytest.mark.parametrize("count,hubs", [(25, 0), (40, 1), (120, 2), (60, 1)])
def test_refine_invariants(count, hubs):
    routes = star_paths(count) if hubs == 0 else hub_gadget(count, hubs)[1]
    ends = (0, count + 1) if hubs == 0 else (0, 1)
    k = 1
    res = refine_paths(routes, k, exclude=ends)
    u = len(res.hubs)
    # loss per accepted hub is at most (|U|+1)! * (8k^2+8k+3)
    loss = 1
    for i in range(1, u + 1):
        loss *= factorial(i) * refine_factor(k)
    assert len(res.paths) * loss >= len(routes)
    assert all(set(res.hubs) <= set(p) for p in res.paths)
    for w in {x for p in res.paths for x in p} - set(res.hubs) - set(ends):
        on = sum(w in p for p in res.paths)
        assert on * factorial(u + 1) * refine_factor(k) <= len(res.paths)


def test_hub_bound_constant():
    assert f_refine(1) == 17_778_529
    assert f_refine(0) == 1


def test_hub_bound_fires_when_precondition_met():
    # k=0 makes the precondition trivial; three forced hubs exceed 2k+1 = 1
    _, routes = hub_gadget(4, hubs=3)
    with pytest.raises(HubBoundViolation):
        refine_paths(routes, 0, exclude=(0, 1))


def test_consistent_order():
    assert select_consistent_order([(0, 1), (0, 2)], []) == ((), [(0, 1), (0, 2)], [0, 1])
    paths = [(0, 5, 9)] * 3
    assert select_consistent_order(paths, [5])[0] == (5,)
    forward = [(0, i, 5, 6, 9) for i in range(10, 15)]
    backward = [(0, i, 6, 5, 9) for i in range(20, 23)]
    tau, kept, _ = select_consistent_order(backward + forward, [5, 6])
    assert tau == (5, 6) and len(kept) == 5


def test_pick_unmarked_star():
    inst = gen.star(25)
    path, record = pick_unmarked(inst, star_paths(25), [], 26)
    assert record.b == 1 and record.width == 9
    middle = record.orders[0][9:16]
    assert len(middle) == 7 and star_paths(25).index(path) in middle
    assert pick_unmarked(gen.star(18), star_paths(18), [], 19) is None


@pytest.mark.parametrize("m", [19, 25, 33, 40])
def test_pick_unmarked_walk_closure(m):
    inst = gen.star(m)
    path, _ = pick_unmarked(inst, star_paths(m), [], m + 1)
    chosen = inst.graph.colors[path[1]]
    for end, cs in enumerate_walks_avoiding(inst, m + 1, {0, m + 1}, inst.k, cap=m):
        if end == inst.t:
            assert not chosen & cs


def test_find_irrelevant_star():
    inst = gen.star(25)
    p, cert = find_irrelevant(inst, singletons(25), 26)
    assert cert.kind == UNMARKED_PATH and len(p) == 1
    assert recheck_certificate(inst, cert) == []


def test_find_irrelevant_two_sets(diamond):
    assert find_irrelevant(diamond.replace(k=2), [fs(1), fs(2)], 3) is None


def test_find_irrelevant_fast_path(diamond):
    inst = diamond.replace(k=2)
    p, cert = find_irrelevant(inst, [fs(1, 2)], 3)
    assert p == fs(1, 2) and cert.kind == PROPER_SUBSET
    assert recheck_certificate(inst, cert) == []


def test_prune_family_star():
    inst = gen.star(25)
    kept, certs = prune_family(inst, singletons(25), 26, 20)
    assert len(kept) == 20 and len(certs) == 5
    assert all(recheck_certificate(inst, c) == [] for c in certs)
    assert {c.removed for c in certs}.isdisjoint(kept)


def test_prune_family_below_threshold():
    inst = gen.star(25)
    assert prune_family(inst, singletons(25), 26, 25) == (sorted(singletons(25), key=lambda p: (len(p), sorted(p))), [])


def test_tampered_certificate_rejected():
    inst = gen.star(25)
    _, cert = find_irrelevant(inst, singletons(25), 26)
    m = cert.marking
    bad = PruneCertificate(cert.kind, cert.removed, cert.vertex,
                           marking=type(m)(**{**m.__dict__, "chosen": m.orders[0][0]}))
    assert recheck_certificate(inst, bad)
    fake = PruneCertificate(PROPER_SUBSET, fs(1), 3, path=(0, 1, 3))
    assert recheck_certificate(gen.diamond(), fake)


def test_dump_format():
    inst = gen.star(25)
    _, certs = prune_family(inst, singletons(25), 26, 24)
    line = dump_certificates(certs).strip()
    assert line.startswith("unmarked-path removed=") and "\n" not in line


def _forced_prunes(inst):
    """Run every round with threshold 1 and yield (v, certificates, kept)."""
    try:
        inst, _, early = normalize_terminals(inst)
    except BudgetExhausted:
        return
    if early:
        return
    cache = ReachCache(inst)
    families = [[fs()]]
    for i in range(1, inst.k + 1):
        cand, found = extend_families(inst, families, i, cache)
        if found:
            return
        union = set()
        for v in range(inst.n):
            kept, certs = prune_family(inst, cand, v, 1, cache)
            union.update(kept)
            yield inst, v, certs, kept
        families.append(sorted(union, key=lambda p: (len(p), sorted(p))))


@pytest.mark.parametrize("inst", small_grids(25))
def test_forced_prunes_survive_audit(inst):
    for reduced, v, certs, kept in _forced_prunes(inst):
        for c in certs:
            assert recheck_certificate(reduced, c) == []
        assert audit_removals(reduced, v, [c.removed for c in certs], kept) == []
