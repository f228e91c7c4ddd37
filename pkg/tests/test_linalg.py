from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from cyclic_workbench.linalg import (BadPrime, CompositionNonzero, DimensionMismatch, RationalMatrix,
                                     homology_dim, induced_map_rank, kernel_basis, mod_check, modular_rank,
                                     rank, rank_log, solve)
from strategies import invertible_matrices, matrices, small_rationals


def sympy_rank(m: RationalMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return sympy.Matrix(m.to_dense()).rank()


def test_rank_small_examples():
    assert rank(RationalMatrix.from_dense([[1, 2], [2, 4]])) == 1
    assert rank(RationalMatrix.identity(5)) == 5
    assert rank(RationalMatrix.zeros(3, 4)) == 0
    assert rank(RationalMatrix.zeros(0, 4)) == 0
    half = Fraction(1, 2)
    assert rank(RationalMatrix.from_dense([[half, 1], [1, 2]])) == 1


def test_rank_negative_unit_pivot():
    # a pivot of -1 once flipped the elimination sign
    m = RationalMatrix.from_dense([[-1, 1, 0], [1, 0, 1], [0, 1, 1]])
    assert rank(m) == 2


def test_dense_fallback_agrees():
    m = RationalMatrix.from_dense([[(i * j + i + 1) % 7 - 3 for j in range(12)] for i in range(12)])
    assert rank(m) == sympy_rank(m)


def test_kernel_and_solve():
    m = RationalMatrix.from_dense([[1, 2, 3], [2, 4, 6]])
    ker = kernel_basis(m)
    assert len(ker) == 2
    for v in ker:
        assert m.apply(v) == {}
    x = solve(m, {0: 1, 1: 2})
    assert m.apply(x) == {0: 1, 1: 2}
    assert solve(m, {0: 1, 1: 1}) is None


def test_homology_dim_checks_composition():
    d1 = RationalMatrix.from_dense([[1, 1]])
    d2 = RationalMatrix.from_dense([[1], [-1]])
    assert homology_dim(d1, d2) == 0
    with pytest.raises(CompositionNonzero):
        homology_dim(d1, RationalMatrix.from_dense([[1], [0]]))
    with pytest.raises(DimensionMismatch):
        homology_dim(d1, RationalMatrix.from_dense([[1]]))


def test_induced_rank_of_identity_on_circle_complex():
    # cellular chains of a circle: d1 = 0 on one vertex, one edge
    d1 = RationalMatrix.zeros(1, 1)
    zero_in = RationalMatrix.zeros(1, 0)
    assert induced_map_rank(d1, RationalMatrix.identity(1), zero_in) == 1
    assert induced_map_rank(d1, RationalMatrix.zeros(1, 1), zero_in) == 0


def test_modular_rank_and_bad_prime():
    m = RationalMatrix.from_dense([[Fraction(1, 7), 1], [0, 1]])
    assert modular_rank(m, 1000003) == 2
    with pytest.raises(BadPrime):
        modular_rank(m, 7)
    # rank drops mod a prime dividing a minor
    assert modular_rank(RationalMatrix.from_dense([[1, 1], [1, 1000004]]), 1000003) == 1


def test_mod_check_logs_every_rank():
    log = []
    with mod_check(primes=3, seed=1, log=log):
        rank(RationalMatrix.from_dense([[1, 2], [3, 4]]))
    (shape, r, checks), = log
    assert shape == (2, 2) and r == 2
    assert len(checks) == 3 and all(p > 10**6 and mr == 2 for p, mr in checks)


def test_rank_log_collects_without_checks():
    with rank_log() as entries:
        rank(RationalMatrix.identity(3))
    assert entries == [((3, 3), 3, [])]


@given(matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == sympy_rank(m)


@given(matrices())
def test_rank_of_transpose(m):
    assert rank(m) == rank(m.T)


@given(matrices())
def test_rank_nullity(m):
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == m.cols
    for v in ker:
        assert m.apply(v) == {}


@st.composite
def basis_change(draw):
    r, c = draw(st.integers(1, 5)), draw(st.integers(1, 5))
    return draw(invertible_matrices(r)), draw(matrices(shape=(r, c))), draw(invertible_matrices(c))


@given(basis_change())
def test_rank_invariant_under_basis_change(triple):
    p, m, q = triple
    assert rank(p @ m @ q) == rank(m)


@given(matrices(), st.integers(0, 10**6))
def test_modular_rank_never_exceeds_exact(m, k):
    p = int(sympy.nextprime(10**6 + k))
    try:
        assert modular_rank(m, p) <= rank(m)
    except BadPrime:
        pass


@given(matrices(max_rows=5, max_cols=5), small_rationals)
def test_scaling_preserves_rank(m, s):
    expected = rank(m) if s else 0
    assert rank(m.scale(s)) == expected
