from fractions import Fraction

import pytest

from stairpoly.cache import ResultCache
from stairpoly.ehrhart import (MAX_N_DEFAULT, catalan_product, ehrhart_poly, factor_checks,
                               linear_factor_run, relative_volume, rising_product,
                               check_volume_formula)
from stairpoly.exactcore import UniPoly, catalan
from stairpoly.latticeoracle import FaceSpec, count_points_bruteforce, count_points_dp, zero_range
from stairpoly.transfer import GuardExceeded

T = UniPoly([0, 1])
SQ = (T + 3) ** 2

CLOSED = {
    2: T + 1,
    3: rising_product(3) * UniPoly([Fraction(1, 6)]),
    4: (T + 3) * rising_product(5) * UniPoly([Fraction(1, 360)]),
    5: SQ * rising_product(8) * UniPoly([Fraction(1, 362880)]),
    6: SQ * UniPoly([26, 12, 1]) * rising_product(11) * UniPoly([Fraction(1, 9340531200)]),
    7: SQ * UniPoly([10336, 9568, 2985, 353, 14]) * rising_product(15)
    * UniPoly([Fraction(1, 121645100408832000)]),
}


@pytest.mark.parametrize("n", sorted(CLOSED))
def test_closed_forms(n):
    assert ehrhart_poly(n).poly == CLOSED[n]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_poly_matches_bruteforce(n):
    p = ehrhart_poly(n).poly
    for t in range(0, 6):
        assert p(t) == count_points_bruteforce(FaceSpec(n), t, force=True)


def test_poly_n5_matches_dp_beyond_interpolation_window():
    p = ehrhart_poly(5).poly
    for t in (10, 15):
        assert p(t) == count_points_dp(FaceSpec(5), t)


@pytest.mark.parametrize("n,v", [(2, 1), (3, 1), (4, 2), (5, 10), (6, 140), (7, 5880)])
def test_relative_volume(n, v):
    assert relative_volume(n) == v


def test_catalan_product():
    assert [catalan_product(n) for n in (2, 6, 7, 8)] == [1, 140, 5880, 776160]
    for n in range(2, 15):
        want = 1
        for i in range(n - 1):
            want *= catalan(i)
        assert catalan_product(n) == want


@pytest.mark.parametrize("n", range(2, 11))
def test_volume_formula_through_10(n):
    assert check_volume_formula(n)


@pytest.mark.heavy
@pytest.mark.parametrize("n", [11, 12])
def test_volume_formula_heavy(n):
    assert check_volume_formula(n, heavy=True)


def test_guard():
    with pytest.raises(GuardExceeded):
        ehrhart_poly(MAX_N_DEFAULT + 1)


def test_factor_checks_small_n():
    # below n=5 only the rising factor is present
    assert factor_checks(4).rising_divides and not factor_checks(4).square_divides
    assert factor_checks(3).rising_divides


@pytest.mark.parametrize("n", range(5, 9))
def test_factor_checks(n):
    rep = factor_checks(n)
    assert rep.ok
    assert rep.rising_length >= rep.expected_rising_length == zero_range(n)


def test_factor_details():
    assert SQ.divides(ehrhart_poly(5).poly)
    assert rising_product(11).divides(ehrhart_poly(6).poly)
    rep = factor_checks(7)
    assert UniPoly([10336, 9568, 2985, 353, 14]).divides(rep.cofactor)
    assert linear_factor_run(CLOSED[4]) == 5


def test_cache_round_trip(tmp_path):
    path = tmp_path / "c.json"
    c = ResultCache(path)
    first = ehrhart_poly(6, cache=c)
    c.save()
    c2 = ResultCache(path)
    assert len(c2) == len(c) > 0
    second = ehrhart_poly(6, cache=c2)
    assert c2.misses == 0 and c2.hits > 0
    assert first.poly == second.poly


def test_json_is_stable():
    a = ehrhart_poly(5).to_json()
    b = ehrhart_poly(5).to_json()
    assert a == b
