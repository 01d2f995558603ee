from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from colorpath import generators as gen
from colorpath.geometry import (
    DegeneratePosition,
    GeometricInstance,
    GeometryError,
    Obstacle,
    OnBoundary,
    build_arrangement,
    dualize,
    point_in_polygon,
    point_locate,
    segment_intersection,
)
from colorpath.graph import validate_instance
from colorpath.oracle import oracle_min_colors, oracle_solve, oracle_solve_subsets

square = gen.square
SQ2 = (square(0, 0, 0, 4, 4), square(1, 2, 2, 6, 6))


def test_single_square():
    arr = build_arrangement([square(0, 0, 0, 4, 4)])
    assert (len(arr.vertices), len(arr.edges), len(arr.faces)) == (4, 4, 2)


def test_two_disjoint_squares():
    arr = build_arrangement([square(0, 0, 0, 2, 2), square(1, 5, 5, 7, 7)])
    assert len(arr.faces) == 3
    assert arr.euler_ok()


def test_overlapping_squares():
    arr = build_arrangement(SQ2)
    v, e, f = len(arr.vertices), len(arr.edges), len(arr.faces)
    assert (v, e, f) == (10, 12, 4)
    assert v - e + f == 2
    assert sorted(map(sorted, dual_colors(arr))) == [[], [0], [0, 1], [1]]


def dual_colors(arr):
    from colorpath.geometry import face_colors
    return [face_colors(arr, f) for f in range(len(arr.faces))]


def test_crossing_points_are_exact():
    arr = build_arrangement(SQ2)
    assert (Fraction(4), Fraction(2)) in arr.vertices
    assert (Fraction(2), Fraction(4)) in arr.vertices
    hit = segment_intersection((0, 0), (3, 1), (0, 1), (3, 0))
    assert hit == ("cross", (Fraction(3, 2), Fraction(1, 2)))


def test_point_locate():
    arr = build_arrangement([square(0, 0, 0, 4, 4)])
    inner = next(f for f, face in enumerate(arr.faces) if face.bounded)
    assert point_locate(arr, (1, 1)) == inner
    assert point_locate(arr, (100, 100)) == 0
    with pytest.raises(OnBoundary):
        point_locate(arr, (0, 2))


@pytest.mark.parametrize("obstacles", [
    (square(0, 0, 0, 4, 4), square(1, 4, 0, 8, 4)),          # shared edge
    (square(0, 0, 0, 4, 4), square(1, 4, 4, 8, 8)),          # touching corners
    (square(0, 0, 0, 4, 4), square(1, 2, 0, 6, 4)),          # collinear overlap
    (square(0, 0, 0, 4, 4), Obstacle(1, ((2, -2), (6, 2), (2, 6))), Obstacle(2, ((4, -1), (5, 5), (3, 5)))),
])
def test_degenerate_input_rejected(obstacles):
    with pytest.raises(DegeneratePosition):
        build_arrangement(obstacles)


def test_three_lines_through_one_point():
    obs = (Obstacle(0, ((-4, 0), (4, 0), (4, -1))),
           Obstacle(1, ((0, -4), (0, 4), (-1, 4))),
           Obstacle(2, ((-4, -4), (4, 4), (5, 3))))
    with pytest.raises(DegeneratePosition, match="three boundaries"):
        build_arrangement(obs)


def test_non_simple_polygon_rejected():
    bowtie = Obstacle(0, ((0, 0), (4, 4), (4, 0), (0, 4)))
    with pytest.raises(GeometryError):
        build_arrangement([bowtie])


def test_sq2_dual_verdicts():
    for k, verdict in ((1, "NO"), (2, "YES")):
        geo = GeometricInstance(SQ2, (1, 1), (5, 5), k)
        inst = dualize(geo).instance
        assert inst.n == 4
        assert validate_instance(inst) == []
        assert oracle_solve(inst).verdict == verdict
        assert oracle_solve_subsets(inst).verdict == verdict


@pytest.mark.parametrize("q", range(6))
def test_rings(q):
    inst = dualize(gen.rings(q)).instance
    assert validate_instance(inst) == []
    assert oracle_min_colors(inst) == q
    assert oracle_solve(inst).verdict == "YES"
    if q:
        assert oracle_solve(inst.replace(k=q - 1)).verdict == "NO"


def test_corridor():
    geo = GeometricInstance((square(0, 0, 0, 4, 10), square(1, 6, 0, 10, 10)), (-5, 5), (15, 5), 0)
    inst = dualize(geo).instance
    assert oracle_min_colors(inst) == 0
    assert oracle_solve(inst).verdict == "YES"


def test_sample_points_are_inside_their_faces():
    for seed in range(20):
        arr = build_arrangement(gen.scene(5, seed).obstacles)
        for f, face in enumerate(arr.faces):
            assert point_locate(arr, face.sample) == f


@pytest.mark.parametrize("seed", range(30))
def test_random_scene_dual_is_valid(seed):
    geo = gen.scene(1 + seed % 8, seed)
    dual = dualize(geo)
    assert dual.arrangement.euler_ok()
    assert validate_instance(dual.instance) == []


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 500), st.integers(-50, 50), st.integers(-50, 50))
def test_min_colors_translation_invariant(seed, dx, dy):
    geo = gen.scene(4, seed)
    moved = GeometricInstance(
        tuple(Obstacle(o.id, tuple((x + dx, y + dy) for x, y in o.points)) for o in geo.obstacles),
        (geo.s[0] + dx, geo.s[1] + dy), (geo.t[0] + dx, geo.t[1] + dy), geo.k)
    assert oracle_min_colors(dualize(geo).instance) == oracle_min_colors(dualize(moved).instance)


def test_point_in_polygon_concave():
    u_shape = ((0, 0), (6, 0), (6, 6), (4, 6), (4, 2), (2, 2), (2, 6), (0, 6))
    assert point_in_polygon((1, 5), u_shape)
    assert not point_in_polygon((3, 5), u_shape)
    assert point_in_polygon((3, 1), u_shape)
