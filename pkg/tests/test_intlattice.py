from itertools import combinations, product
from math import gcd

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from grassmann_mu.intlattice import (
    IntMatrix,
    format_matrix,
    integer_kernel_basis,
    parse_matrix,
    rational_rank,
    smith_normal_form,
    solve_in_lattice,
)


def _det(rows):
    return int(sympy.Matrix(rows).det()) if rows else 1


def determinantal_divisors(A: IntMatrix):
    """gcd of all k x k minors, k = 1..min(m, n); the brute-force SNF oracle."""
    out = []
    for k in range(1, min(A.rows, A.cols) + 1):
        g = 0
        for rs in combinations(range(A.rows), k):
            for cs in combinations(range(A.cols), k):
                g = gcd(g, _det([[A[r, c] for c in cs] for r in rs]))
        out.append(g)
    return out


def small_matrices(max_dim=12):
    return st.integers(0, max_dim).flatmap(
        lambda m: st.integers(0, max_dim).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m
            ).map(lambda rows: IntMatrix(m, n, rows))
        )
    )


def assert_valid_snf(A, snf):
    assert snf.U @ A @ snf.V == snf.S
    assert abs(_det(snf.U.tolist())) == 1
    assert abs(_det(snf.V.tolist())) == 1
    S = snf.S
    for r in range(S.rows):
        for c in range(S.cols):
            if r != c:
                assert S[r, c] == 0
    d = snf.invariant_factors
    assert all(x >= 0 for x in d)
    nz = [x for x in d if x]
    assert d[: len(nz)] == nz, "zeros must trail"
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0


def test_snf_diag_2_3():
    A = IntMatrix.diag([2, 3])
    snf = smith_normal_form(A)
    assert snf.S == IntMatrix.diag([1, 6])
    assert_valid_snf(A, snf)


def test_snf_zero_matrix():
    A = IntMatrix.zeros(3, 3)
    snf = smith_normal_form(A)
    assert snf.S == IntMatrix.zeros(3, 3)
    assert snf.rank == 0


def test_snf_2x2_hand_reduced():
    A = IntMatrix.from_rows([[2, 4], [6, 8]])
    snf = smith_normal_form(A)
    assert snf.S == IntMatrix.diag([2, 4])
    assert_valid_snf(A, snf)


@pytest.mark.parametrize("shape", [(0, 0), (2, 0), (0, 3)])
def test_snf_empty(shape):
    A = IntMatrix.zeros(*shape)
    snf = smith_normal_form(A)
    assert snf.U.shape == (shape[0], shape[0])
    assert snf.V.shape == (shape[1], shape[1])
    assert snf.verify(A)


def test_snf_is_deterministic():
    A = IntMatrix.from_rows([[3, 6, -9], [2, 2, 4], [0, 5, 10]])
    a, b = smith_normal_form(A), smith_normal_form(A)
    assert (a.U, a.S, a.V) == (b.U, b.S, b.V)


@given(small_matrices(max_dim=5))
@settings(max_examples=150, deadline=None)
def test_snf_matches_determinantal_divisors(A):
    snf = smith_normal_form(A)
    assert_valid_snf(A, snf)
    prod = 1
    dd = determinantal_divisors(A)
    for k, d in enumerate(snf.invariant_factors):
        prod *= d
        assert prod == dd[k]


@given(small_matrices())
@settings(max_examples=200, deadline=None)
def test_rank_paths_agree(A):
    snf = smith_normal_form(A)
    assert snf.verify(A)
    assert rational_rank(A) == snf.rank


@given(small_matrices(max_dim=7))
@settings(max_examples=100, deadline=None)
def test_rational_rank_against_sympy(A):
    expected = sympy.Matrix(A.tolist()).rank() if A.rows and A.cols else 0
    assert rational_rank(A) == expected


def test_rational_rank_examples():
    assert rational_rank(IntMatrix.identity(3)) == 3
    assert rational_rank(IntMatrix.zeros(4, 2)) == 0
    assert rational_rank(IntMatrix.from_rows([[2, 4], [6, 8]])) == 2


def test_kernel_identity_is_empty():
    assert integer_kernel_basis(IntMatrix.identity(2)) == []


def test_kernel_of_zero_row_spans_z2():
    basis = integer_kernel_basis(IntMatrix.zeros(1, 2))
    assert len(basis) == 2
    assert abs(_det([[basis[0][0], basis[1][0]], [basis[0][1], basis[1][1]]])) == 1


def test_kernel_of_row_1_1():
    # every small solution of x + y = 0 is a multiple of (1, -1)
    sols = [(x, y) for x, y in product(range(-4, 5), repeat=2) if x + y == 0 and (x, y) != (0, 0)]
    assert all(x == -y for x, y in sols)
    assert integer_kernel_basis(IntMatrix.from_rows([[1, 1]])) == [[1, -1]]


@given(small_matrices(max_dim=8))
@settings(max_examples=100, deadline=None)
def test_kernel_vectors_annihilated_and_saturated(A):
    basis = integer_kernel_basis(A)
    assert len(basis) == A.cols - rational_rank(A)
    for v in basis:
        assert all(x == 0 for x in A.apply(v))
    if basis:
        K = IntMatrix(A.cols, len(basis), [[v[r] for v in basis] for r in range(A.cols)])
        # saturated: all invariant factors of the basis matrix are 1
        assert all(d == 1 for d in smith_normal_form(K).invariant_factors)


def test_solve_in_lattice():
    K = IntMatrix.from_rows([[2, 0], [0, 1], [0, 0]])
    assert solve_in_lattice(K, [4, -3, 0]) == [2, -3]
    assert solve_in_lattice(K, [3, 0, 0]) is None
    assert solve_in_lattice(K, [0, 0, 1]) is None


def test_plain_text_round_trip(tmp_path):
    A = IntMatrix.from_rows([[1, -2, 0], [12345678901234567890, 0, 7]])
    text = format_matrix(A)
    assert text.splitlines()[0] == "2 3"
    assert parse_matrix(text) == A
    assert parse_matrix(format_matrix(IntMatrix.zeros(2, 0))).shape == (2, 0)


def test_plain_text_rejects_bad_rows():
    with pytest.raises(ValueError):
        parse_matrix("2 2\n1 2\n3\n")


def test_no_floats_accepted():
    with pytest.raises(TypeError):
        IntMatrix(1, 1, [[1.5]])
