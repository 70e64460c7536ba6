from math import comb

import pytest

from stairpoly.facets import (check_antidiagonal, check_diagonal_relations,
                              check_rectangular, check_symmetries, check_vertex_sum,
                              compare_with_published, facet_cells, facet_ehrhart,
                              facet_table, facet_volume, is_facet,
                              load_published, palindromic, published_diagonals, skew_matrix,
                              table_from_triangle)
from stairpoly.transfer import GuardExceeded

TABLES = {
    3: [[1]],
    4: [[1], [2, 1]],
    5: [[3], [7, 4], [10, 7, 3]],
    6: [[28], [70, 42], [112, 84, 42], [140, 112, 70, 28]],
}
SKEW7 = [
    [0, -840, -2180, -3700, -5040, -5880],
    [840, 0, -1340, -2860, -4200, -5040],
    [2180, 1340, 0, -1520, -2860, -3700],
    [3700, 2860, 1520, 0, -1340, -2180],
    [5040, 4200, 2860, 1340, 0, -840],
    [5880, 5040, 3700, 2180, 840, 0],
]


@pytest.fixture(scope="module")
def tables():
    return {n: facet_table(n) for n in TABLES}


def test_facet_cells():
    assert facet_cells(3) == [(2, 1), (2, 2), (3, 1), (3, 2)]
    assert not is_facet(5, 1, 1) and not is_facet(5, 3, 4) and not is_facet(5, 2, 5)
    assert is_facet(5, 4, 2)


@pytest.mark.parametrize("n,r,s,v", [(5, 3, 2, 7), (5, 4, 2, 10), (4, 3, 2, 2), (3, 2, 2, 1)])
def test_facet_volume_examples(n, r, s, v):
    assert facet_volume(n, r, s).volume == v


def test_non_facet_rejected():
    with pytest.raises(ValueError):
        facet_volume(5, 1, 1)


@pytest.mark.parametrize("n", sorted(TABLES))
def test_tables(tables, n):
    assert tables[n].triangle() == TABLES[n]


def test_facet_degrees(tables):
    for n in (3, 4, 5):
        for r, s in facet_cells(n):
            assert facet_ehrhart(n, r, s).degree == comb(n, 2) - 1


def test_lattice_indices_are_positive(tables):
    for n, tab in tables.items():
        assert all(i >= 1 for i in tab.indices.values())


@pytest.mark.parametrize("n", sorted(TABLES))
def test_identities(tables, n):
    t = tables[n]
    assert check_symmetries(t) == []
    assert check_antidiagonal(t) == []
    assert check_rectangular(t)["ok"]
    assert check_vertex_sum(t)["ok"]


def test_vertex_sum_examples(tables):
    t4, t5 = tables[4], tables[5]
    assert t4.volumes[2, 2] + t4.volumes[3, 3] == 2
    assert t5.volumes[2, 2] + t5.volumes[3, 3] + t5.volumes[4, 4] == 10
    assert t4.volumes[2, 1] + t4.volumes[3, 3] == 2


def test_skew_matrix_published():
    assert skew_matrix(table_from_triangle(7, load_published()["facet_tables"]["7"])) == SKEW7
    assert check_rectangular(load_published()["facet_tables"]["7"])["ok"]
    flat = check_rectangular([[5], [5, 5], [5, 5, 5]])
    # constant triangles satisfy the relation, their skew completions do not
    assert flat["triangle"] == [] and flat["skew"]
    assert not check_rectangular([[1], [2, 9]])["ok"]


def test_diagonal_relations_on_fixtures():
    rep = check_diagonal_relations(published_diagonals())
    assert rep["ok"] and rep["b_checked"] == [4, 5, 6, 7, 8]
    assert rep["a_checked"] == list(range(3, 11))


def test_diagonal_relations_examples():
    assert 28 * comb(6, 2) == 3 * 140
    assert 840 * comb(7, 2) == 3 * 5880
    assert check_diagonal_relations({4: [1, 1], 5: [3, 4, 3], 6: [28, 42, 42, 28]}, b_range=[4])["ok"]


def test_palindromic_completion():
    assert palindromic([840, 1340, 1520, 1340], 5) == [840, 1340, 1520, 1340, 840]
    assert published_diagonals()[10][-1] == 31743391680


def test_fixture_comparison_names_entry(tables):
    data = load_published()
    data["facet_tables"]["5"] = [[3], [7, 4], [10, 8, 3]]
    msgs = compare_with_published(tables[5], data)
    assert msgs == ["n=5 (4,3): published 8, computed 7"]


def test_guard():
    with pytest.raises(GuardExceeded):
        facet_table(7)


@pytest.mark.heavy
def test_n7_table():
    t = facet_table(7, heavy=True)
    assert t.triangle() == load_published()["facet_tables"]["7"]
    assert check_vertex_sum(t)["ok"] and check_rectangular(t)["ok"]
