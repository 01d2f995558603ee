import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from colorpath.sunflower import Sunflower, erdos_rado_bound, find_sunflower


def fs(*xs):
    return frozenset(xs)


def test_common_core():
    sf = find_sunflower([fs(1, 2), fs(1, 3), fs(1, 4)], 3)
    assert sf.core == {1} and len(sf.petals) == 3


def test_disjoint_singletons():
    sf = find_sunflower([fs(1), fs(2), fs(3)], 3)
    assert sf.core == frozenset() and len(sf.petals) == 3


def test_random_pairs():
    rng = random.Random(5)
    pairs = list(itertools.combinations(range(12), 2))
    fam = [frozenset(p) for p in rng.sample(pairs, 40)]
    assert erdos_rado_bound(2, 4) == 18
    sf = find_sunflower(fam, 4)
    assert sf is not None and len(sf.petals) >= 4 and sf.is_valid()
    assert set(sf.petals) <= set(fam)


def test_non_uniform_rejected():
    with pytest.raises(ValueError):
        find_sunflower([fs(1), fs(1, 2)], 2)


def test_too_small_family():
    assert find_sunflower([fs(1, 2), fs(1, 3)], 3) is None


def test_validity_check():
    assert not Sunflower(fs(), (fs(1, 2), fs(2, 3))).is_valid()


@settings(max_examples=200, deadline=None)
@given(st.sets(st.frozensets(st.integers(0, 9), min_size=2, max_size=2), min_size=1, max_size=30),
       st.integers(2, 5))
def test_output_has_petal_property(family, a):
    sf = find_sunflower(family, a)
    if sf is not None:
        assert sf.is_valid() and len(sf.petals) >= a
        assert set(sf.petals) <= family


def test_singletons_at_the_bound_are_too_few():
    # a-1 distinct singletons never hold a sunflower of a petals
    assert erdos_rado_bound(1, 3) == 2
    assert find_sunflower([fs(1), fs(2)], 3) is None


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 3), st.integers(2, 4), st.integers(0, 2**32))
def test_one_above_the_bound_always_succeeds(b, a, seed):
    rng = random.Random(seed)
    size = erdos_rado_bound(b, a) + 1
    universe = range(3 * b + size)
    fam = set()
    while len(fam) < size:
        fam.add(frozenset(rng.sample(universe, b)))
    sf = find_sunflower(fam, a)
    assert sf is not None and sf.is_valid() and len(sf.petals) >= a
