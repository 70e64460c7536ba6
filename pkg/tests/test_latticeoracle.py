from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stairpoly.decomp import vertices
from stairpoly.exactcore import UniPoly
from stairpoly.latticeoracle import (FaceSpec, count_interior, count_interior_bruteforce,
                                     count_points_bruteforce, count_points_dp, interior_bound,
                                     staircase_arrays, zero_range)
from stairpoly.transfer import GuardExceeded, evaluate_e

P3 = UniPoly.from_roots([-1, -2, -3]) * UniPoly([Fraction(1, 6)])


def test_p3_arrays():
    arrs = set(staircase_arrays(FaceSpec(3), 1))
    assert arrs == {((1, 0), (0, 1, 0), (0, 0, 1)), ((1, 0), (0, 0, 1), (0, 1, 0)),
                    ((0, 1), (1, 0, 0), (0, 0, 1)), ((0, 1), (0, 0, 1), (1, 0, 0))}
    assert count_points_bruteforce(FaceSpec(3), 1) == 4 == count_points_dp(FaceSpec(3), 1)


def test_segment():
    assert count_points_bruteforce(FaceSpec(2), 5) == 6


def test_face_at_t1_counts_vertices():
    for n in (3, 4):
        for r, s in [(r, s) for r in range(1, n + 1) for s in range(1, min(r + 1, n) + 1)]:
            want = sum(1 for v in vertices(n) if v[r - 1][s - 1] == 0)
            assert count_points_bruteforce(FaceSpec(n, {(r, s)}), 1) == want
    assert count_points_bruteforce(FaceSpec(4, {(2, 2)}), 1) == 6


def test_vertex_count():
    for n in range(1, 13):
        assert count_points_dp(FaceSpec(n), 1) == 2 ** (n - 1)


def test_dp_matches_transfer():
    assert count_points_dp(FaceSpec(5), 3) == evaluate_e(5, 3)
    for n in range(2, 8):
        for t in range(6):
            assert count_points_dp(FaceSpec(n), t) == evaluate_e(n, t)


def test_invalid_zero_cell():
    with pytest.raises(ValueError):
        FaceSpec(3, {(1, 3)})


cells4 = [(r, s) for r in range(1, 5) for s in range(1, min(r + 1, 4) + 1)]


@settings(max_examples=60)
@given(st.integers(2, 5), st.sets(st.sampled_from(cells4)), st.integers(0, 4))
def test_dp_matches_bruteforce_random_faces(n, zeros, t):
    zeros = {(r, s) for r, s in zeros if r <= n and s <= min(r + 1, n)}
    spec = FaceSpec(n, zeros)
    assert count_points_dp(spec, t) == count_points_bruteforce(spec, t, force=True)


def test_interior_bounds():
    assert [interior_bound(n) for n in (2, 5, 6)] == [2, 9, 12]
    assert [zero_range(n) for n in (3, 4)] == [3, 5]


def test_interior_small():
    assert all(count_interior(3, t) == 0 for t in range(1, 4))
    assert all(count_interior(4, t) == 0 for t in range(1, 6))
    assert count_interior(3, 4) == 1 == -P3(-4)


@pytest.mark.parametrize("n,t", [(3, 4), (3, 5), (3, 6), (4, 6), (4, 7)])
def test_interior_dp_matches_enumeration(n, t):
    assert count_interior(n, t) == count_interior_bruteforce(n, t, force=True)


def test_guard():
    with pytest.raises(GuardExceeded):
        count_points_bruteforce(FaceSpec(6), 6)
