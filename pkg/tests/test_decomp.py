import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stairpoly.arrays import TriArray, enumerate_arrays
from stairpoly.decomp import (LinFuncTriangle, barycenter, build_linear_map, cells,
                              chain_inequalities_hold, conditions_ok, decomposition, grid_report,
                              in_polytope, locate_point, random_point, simplex_of, tiling_report,
                              triangle_of, validate_conditions, var_name, vertices)
from stairpoly.exactcore import det_exact
from stairpoly.transfer import GuardExceeded

WORKED = TriArray.parse("0; 0 1; 0 0 2; 0 0 1 2")
FINAL = [["AFGHIJKLMN"], ["B", "FJKLN"], ["C", "GM", "BJN"], ["DO", "H", "K", "BCM"],
         ["E", "I", "L", "GN", "BCO"]]


def test_variable_order_is_column_major():
    assert cells(3) == [(1, 1), (2, 1), (2, 2)]
    assert cells(4) == [(1, 1), (2, 1), (3, 1), (2, 2), (3, 2), (3, 3)]
    assert [var_name(6, v, "letters") for v in range(15)] == list("ABCDEFGHIJKLMNO")
    assert var_name(6, 5, "rc") == "x22"


def test_worked_example_final_triangle():
    tri = build_linear_map(WORKED)
    assert tri.format("letters") == FINAL
    assert abs(det_exact(tri.coefficient_matrix())) == 1


def test_worked_example_stages():
    _, stages, _ = build_linear_map(WORKED, record=True)
    assert stages[3].format("letters")[2][2] == "BJ"
    assert stages[5].format("letters") == FINAL
    for k, tri in stages.items():
        assert conditions_ok(validate_conditions(tri, k, WORKED)), k


def test_worked_example_column_one_partition():
    tri = build_linear_map(WORKED)
    col = tri.col_vars(1)
    seen = sorted(v for entry in col for v in entry)
    assert seen == list(range(15))


def test_n3_triangle():
    tri = build_linear_map(TriArray.parse("0"))
    assert tri.format("rc") == [["x11x22"], ["x21", "x22"]]


def test_identity_passes_conditions():
    for n in (3, 4, 5, 6):
        assert conditions_ok(validate_conditions(LinFuncTriangle.identity(n), 1))


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_every_array_gives_unimodular_valid_map(n):
    for alpha in enumerate_arrays(n):
        tri, stages, _ = build_linear_map(alpha, record=True)
        assert abs(det_exact(tri.coefficient_matrix())) == 1
        for k, st_ in stages.items():
            assert conditions_ok(validate_conditions(st_, k, alpha)), (alpha, k)


def test_simplex_vertices():
    simplex = simplex_of(TriArray.parse("0"))
    assert simplex[0] == [[0, 1, 0], [0, 0, 1], [1, 0, 0]]
    # unit vector at x11 (the first variable), then x21, x22
    assert simplex[1] == [[1, 0, 0], [0, 0, 1], [0, 1, 0]]
    assert simplex[3] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    verts = {tuple(map(tuple, v)) for v in vertices(4)}
    for alpha in enumerate_arrays(4):
        s = simplex_of(alpha)
        assert len(s) == comb(4, 2) + 1
        assert all(tuple(map(tuple, v)) in verts for v in s)


def test_worked_example_vertex_at_o():
    s = simplex_of(WORKED)
    o = s[1 + 14]
    assert triangle_of(o)[4, 1] == 1


@pytest.mark.parametrize("n", [3, 4, 5])
def test_barycenter_round_trip(n):
    dec = decomposition(n)
    for alpha in dec.alphas:
        loc = locate_point(n, barycenter(simplex_of(alpha)), dec)
        assert loc.alpha == alpha and not loc.boundary


def test_vertex_is_boundary():
    for v in vertices(5):
        assert locate_point(5, v).boundary
    origin = simplex_of(TriArray.zeros(5))[0]
    assert len(locate_point(5, origin).containing) == len(decomposition(5).alphas)


def test_point_outside_rejected():
    with pytest.raises(ValueError):
        locate_point(3, [[1, 1, 0], [0, 0, 1], [0, 0, 0]])


def test_random_points_are_in_polytope():
    rng = random.Random(1)
    for n in (3, 4, 5):
        for _ in range(20):
            y = random_point(n, rng)
            assert in_polytope(y)
            assert chain_inequalities_hold(n, triangle_of(y))


@pytest.mark.parametrize("n,samples", [(4, 500), (5, 1000)])
def test_tiling(n, samples):
    rep = tiling_report(n, samples, seed=7)
    assert rep.uncovered == 0 and rep.overlaps == 0
    assert rep.single + rep.boundary == samples


def test_grid_n3():
    rep = grid_report(3, 7)
    assert rep.uncovered == 0 and rep.overlaps == 0 and rep.single > 0


def test_guard():
    with pytest.raises(GuardExceeded):
        decomposition(7)


def test_cap_order_independence():
    for n in (4, 5):
        for alpha in enumerate_arrays(n):
            base = build_linear_map(alpha)
            alt = build_linear_map(alpha, cap_order=lambda order: order[::-1])
            assert alt == base


@settings(max_examples=30)
@given(st.integers(3, 5), st.integers(0, 10 ** 6))
def test_locate_is_deterministic(n, seed):
    y = random_point(n, random.Random(seed))
    assert locate_point(n, y) == locate_point(n, y)
