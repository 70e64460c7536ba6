import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stairpoly.decomp import vertices
from stairpoly.exactcore import (UniPoly, binomial, catalan, char_poly, det_exact, lattice_index,
                                 matmul, poly_interpolate, positive_real_root_count, rank_int,
                                 rat_from_str, rat_to_str, smith_invariants)

T = UniPoly([0, 1])


def cofactor_det(m):
    if not m:
        return 1
    return sum((-1) ** j * m[0][j] * cofactor_det([row[:j] + row[j + 1:] for row in m[1:]])
               for j in range(len(m)))


def mat_poly_eval(p, m):
    n = len(m)
    acc = [[0] * n for _ in range(n)]
    for c in reversed(p.coeffs):
        acc = matmul(acc, m)
        for i in range(n):
            acc[i][i] += c
    return acc


# -- polynomials ---------------------------------------------------------------

def test_interpolate_line():
    assert poly_interpolate([(0, 1), (1, 2)]) == T + 1


def test_interpolate_constant():
    assert poly_interpolate([(5, 7)]) == UniPoly([7])


def test_interpolate_p3_counts():
    want = UniPoly.from_roots([-1, -2, -3]) * UniPoly([Fraction(1, 6)])
    assert poly_interpolate([(0, 1), (1, 4), (2, 10), (3, 20)]) == want


def test_interpolate_rejects_bad_input():
    with pytest.raises(ValueError):
        poly_interpolate([])
    with pytest.raises(ValueError):
        poly_interpolate([(1, 2), (1, 3)])


@given(st.lists(st.fractions(max_denominator=20).filter(lambda f: abs(f) < 50), min_size=1,
                max_size=8),
       st.lists(st.integers(-40, 40), min_size=8, max_size=20, unique=True))
def test_interpolation_round_trip(coeffs, xs):
    p = UniPoly(coeffs)
    pts = [(x, p(x)) for x in xs[:max(p.degree, 0) + 1 + 2]]
    assert poly_interpolate(pts) == p


@given(st.lists(st.integers(-9, 9), max_size=6), st.lists(st.integers(-9, 9), min_size=1,
                                                          max_size=4))
def test_divmod_identity(a, b):
    a, b = UniPoly(a), UniPoly(b)
    if b.is_zero():
        return
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


def test_json_round_trip_and_pretty():
    p = UniPoly([Fraction(1, 3), 0, -2])
    assert UniPoly.from_json(p.to_json()) == p
    assert rat_from_str(rat_to_str(Fraction(-7, 9))) == Fraction(-7, 9)
    assert "t^2" in p.pretty()


# -- determinants and characteristic polynomials -------------------------------

def test_char_poly_examples():
    lam = T
    assert char_poly([[2, 1], [1, 3]]) == UniPoly([5, -5, 1])
    assert char_poly([[7]]) == lam - 7
    assert char_poly([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == (lam - 1) ** 3


def test_det_examples():
    for k in range(1, 7):
        assert det_exact([[int(i == j) for j in range(k)] for i in range(k)]) == 1
    assert det_exact([[2, 1], [1, 3]]) == 5


small_matrix = st.integers(1, 6).flatmap(
    lambda d: st.lists(st.lists(st.integers(-2, 2), min_size=d, max_size=d), min_size=d,
                       max_size=d))


@settings(max_examples=1000)
@given(small_matrix)
def test_det_matches_cofactor_expansion(m):
    assert det_exact(m) == cofactor_det(m)


@settings(max_examples=300)
@given(st.integers(1, 5).flatmap(
    lambda d: st.lists(st.lists(st.integers(-5, 5), min_size=d, max_size=d), min_size=d,
                       max_size=d)))
def test_cayley_hamilton(m):
    p = char_poly(m)
    assert p.degree == len(m) and p.lead == 1
    assert all(v == 0 for row in mat_poly_eval(p, m) for v in row)
    assert p(0) * (-1) ** len(m) == det_exact(m)


# -- lattices ------------------------------------------------------------------

def test_lattice_index_examples():
    assert lattice_index([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert lattice_index([[2, 0], [0, 1]]) == 2
    vs = [[x for row in v for x in row] for v in vertices(3)]
    assert lattice_index([[a - b for a, b in zip(v, vs[0])] for v in vs[1:]], rank=3) == 1


def test_lattice_index_rank_deficient():
    with pytest.raises(ValueError):
        lattice_index([[1, 2], [2, 4]], rank=2)


@settings(max_examples=200)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3))
def test_lattice_index_invariance(vectors, u):
    if det_exact(vectors) == 0 or abs(det_exact(u)) != 1:
        return
    assert lattice_index(vectors) == abs(det_exact(vectors))
    mixed = matmul(u, vectors)
    assert lattice_index(mixed) == lattice_index(vectors)
    assert lattice_index(vectors + [[a + b for a, b in zip(*vectors[:2])]]) == lattice_index(vectors)


@given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=1, max_size=4))
def test_smith_invariants_divide(rows):
    inv = smith_invariants(rows)
    assert len(inv) == rank_int(rows)
    for a, b in zip(inv, inv[1:]):
        assert b % a == 0


# -- roots ---------------------------------------------------------------------

def test_positive_root_examples():
    assert positive_real_root_count(UniPoly([5, -5, 1])) == 2
    assert positive_real_root_count(UniPoly([1, 0, 1])) == 0
    assert positive_real_root_count(UniPoly([-20, 27, -10, 1])) == 3
    with pytest.raises(ValueError):
        positive_real_root_count(UniPoly())


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=5), st.integers(0, 2))
def test_positive_roots_of_products(roots, zero_mult):
    p = UniPoly.from_roots(roots) * T ** zero_mult
    assert positive_real_root_count(p) == len({r for r in roots if r > 0})


def test_binomial_and_catalan():
    assert [catalan(i) for i in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]
    assert all(binomial(n, k) == len(list(itertools.combinations(range(n), k)))
               for n in range(8) for k in range(n + 1))
