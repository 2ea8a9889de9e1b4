from math import comb

import pytest
from hypothesis import given, strategies as st

from grassmann_mu.errors import InvalidArgument
from grassmann_mu.intlattice import read_matrix
from grassmann_mu.schubert import (
    Chain,
    boundary,
    boundary_matrix,
    boundary_of_chain,
    cell,
    dual_triple,
    enumerate_cells,
    export_boundary_matrices,
    parse_cell,
    s_cycle,
    top_dimension,
)


def test_n3_has_two_point_cells():
    cells = enumerate_cells(3)
    assert [c.label() for c in cells] == ["e+(1,2,3)", "e-(1,2,3)"]
    assert all(c.dim == 0 for c in cells)


def test_n7_four_cells():
    triples = sorted({(i, j, k) for i in range(1, 8) for j in range(i + 1, 8)
                      for k in range(j + 1, 8) if i + j + k == 10})
    assert triples == [(1, 2, 7), (1, 3, 6), (1, 4, 5), (2, 3, 5)]
    cells = enumerate_cells(7, 4)
    assert len(cells) == 8
    assert {c.triple for c in cells} == set(triples)
    assert [c.sign for c in cells] == [1, -1] * 4


@pytest.mark.parametrize("N", range(3, 11))
def test_total_cell_count(N):
    assert len(enumerate_cells(N)) == 2 * comb(N, 3)


def test_n10_count():
    assert len(enumerate_cells(10)) == 240


def test_enumerate_rejects_small_n():
    with pytest.raises(InvalidArgument):
        enumerate_cells(2)


def test_cell_validation():
    with pytest.raises(InvalidArgument):
        cell(2, 2, 3)
    with pytest.raises(InvalidArgument):
        cell(1, 2, 8, N=7)


def test_boundary_of_point_cell_is_empty():
    assert boundary(cell(1, 2, 3)).is_zero()


def test_boundary_e145():
    b = boundary(cell(1, 4, 5, N=7))
    assert b == Chain(3, {cell(1, 3, 5, 1, 7): 1, cell(1, 3, 5, -1, 7): -1})


def test_boundary_e234():
    b = boundary(cell(2, 3, 4))
    assert b == Chain(2, {cell(1, 3, 4, 1, 4): 1, cell(1, 3, 4, -1, 4): -1})


def test_boundary_matrix_n3_q1_is_empty():
    assert boundary_matrix(3, 1).shape == (2, 0)


def test_boundary_matrix_n4_q1():
    M = boundary_matrix(4, 1)
    cols = enumerate_cells(4, 1)
    col = cols.index(cell(1, 2, 4, 1, 4))
    assert M.column(col) == [1, -1]


def test_boundary_matrix_argument_checks():
    with pytest.raises(InvalidArgument):
        boundary_matrix(2, 1)
    with pytest.raises(InvalidArgument):
        boundary_matrix(5, 0)


@pytest.mark.parametrize("N", range(3, 11))
def test_dd_is_zero(N):
    for q in range(2, top_dimension(N) + 1):
        assert (boundary_matrix(N, q - 1) @ boundary_matrix(N, q)).is_zero()


def test_s_cycle():
    S = s_cycle(7)
    assert S.degree == 4
    assert S.terms == {cell(1, 4, 5, 1, 7): 1, cell(1, 3, 6, 1, 7): 1, cell(1, 2, 7, 1, 7): -1}


def test_s_cycle_needs_cell_127():
    with pytest.raises(InvalidArgument, match=r"e\+\(1,2,7\)"):
        s_cycle(6)


def test_s_cycle_boundary_cancels_by_hand():
    # d e+(1,4,5) = e+(1,3,5) - e-(1,3,5)
    # d e+(1,3,6) = -e+(1,3,5) + e-(1,3,5) - e+(1,2,6) - e-(1,2,6)
    # d e+(1,2,7) = -e+(1,2,6) - e-(1,2,6)
    e = lambda i, j, k, s=1: cell(i, j, k, s, 7)
    assert boundary(e(1, 3, 6)) == Chain(3, {e(1, 3, 5): -1, e(1, 3, 5, -1): 1,
                                             e(1, 2, 6): -1, e(1, 2, 6, -1): -1})
    assert boundary(e(1, 2, 7)) == Chain(3, {e(1, 2, 6): -1, e(1, 2, 6, -1): -1})
    assert boundary_of_chain(s_cycle(7)).is_zero()


triples = st.tuples(st.integers(1, 10), st.integers(1, 10), st.integers(1, 10)).filter(
    lambda t: t[0] < t[1] < t[2])


@given(triples, st.sampled_from([1, -1]), st.integers(0, 4))
def test_boundary_independent_of_n(t, sign, extra):
    i, j, k = t
    small = boundary(cell(i, j, k, sign, k))
    big = boundary(cell(i, j, k, sign, k + extra))
    assert {(c.triple, c.sign): v for c, v in small.terms.items()} == \
           {(c.triple, c.sign): v for c, v in big.terms.items()}


@given(triples)
def test_sign_flip_commutes_with_boundary(t):
    plus = boundary(cell(*t, 1))
    minus = boundary(cell(*t, -1))
    assert {c.flipped(): v for c, v in plus.terms.items()} == minus.terms


@pytest.mark.parametrize("N", range(3, 11))
def test_cell_counts_symmetric_under_duality(N):
    top = top_dimension(N)
    for d in range(top + 1):
        assert len(enumerate_cells(N, d)) == len(enumerate_cells(N, top - d))
    for c in enumerate_cells(N):
        i, j, k = dual_triple(c)
        assert i + j + k - 6 == top - c.dim


def test_chain_arithmetic():
    a = Chain.of(cell(1, 4, 5, N=7))
    assert (a - a).is_zero()
    assert (3 * a).terms[cell(1, 4, 5, N=7)] == 3
    with pytest.raises(InvalidArgument):
        a + Chain.of(cell(1, 2, 3, N=7))


def test_parse_cell_round_trip():
    c = cell(2, 5, 9, -1, 10)
    assert parse_cell(c.label(), 10) == c


def test_export(tmp_path):
    paths = export_boundary_matrices(5, tmp_path)
    names = {p.name for p in paths}
    assert "d_1.txt" in names and "cells_0.txt" in names
    assert read_matrix(tmp_path / "d_3.txt") == boundary_matrix(5, 3)
    listing = (tmp_path / "cells_3.txt").read_text().split()
    assert listing == [c.label() for c in enumerate_cells(5, 3)]
