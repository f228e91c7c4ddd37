from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cyclic_workbench import algebra as A
from cyclic_workbench.verifiers import (NotSeparable, adjoint_projection, check_adjoint_projection,
                                        is_separability_idempotent, morita_check, resolution_differentials,
                                        resolution_of_unitalization, separability_idempotent,
                                        verify_additivity, verify_separable_vanishing)

half = Fraction(1, 2)


def test_additivity_dual_plus_m2():
    rep = verify_additivity(A.dual_numbers(), A.matrix_algebra(2), 3)
    assert rep.additive
    assert rep.hh_sum == [3, 1, 1, 1]
    assert rep.hc_sum == [3, 0, 3, 0]


def test_separability_idempotent_of_m2():
    e = separability_idempotent(A.matrix_algebra(2))
    # e11(x)e11 + e12(x)e21 + e21(x)e12 + e22(x)e22, halved
    assert e.terms() == [(0, 0, half), (1, 2, half), (2, 1, half), (3, 3, half)]


def test_separability_idempotent_of_field():
    assert separability_idempotent(A.field()).terms() == [(0, 0, Fraction(1))]


@pytest.mark.parametrize("sizes", [[1], [2], [1, 1, 1], [1, 2], [3]])
def test_block_algebras_are_separable(sizes):
    a, blocks = A.block_algebra(sizes)
    e = separability_idempotent(a)
    assert is_separability_idempotent(a, e)
    # least-norm choice: 1/n on each e_jk (x) e_kj of block M_n
    expected = []
    for b, n in enumerate(blocks.block_sizes):
        for j in range(n):
            for k in range(n):
                expected.append((blocks.index(b, j, k), blocks.index(b, k, j), Fraction(1, n)))
    assert e.terms() == sorted(expected)


def test_dual_numbers_not_separable():
    with pytest.raises(NotSeparable):
        separability_idempotent(A.dual_numbers())
    with pytest.raises(NotSeparable):
        separability_idempotent(A.nilpotent_line())


def test_separable_vanishing_statuses():
    assert verify_separable_vanishing(A.matrix_algebra(2), 3).status == "verified"
    rep = verify_separable_vanishing(A.dual_numbers(), 3)
    assert rep.status == "vacuous" and rep.hh == [2, 1, 1, 1]


@pytest.mark.parametrize("name, make, dims", [
    ("field", A.field, [4, 4, 1]),
    ("dual", A.dual_numbers, [9, 12, 4]),
    ("M2+field", lambda: A.direct_sum(A.matrix_algebra(2), A.field()), [36, 60, 25]),
    ("nilpotent", A.nilpotent_line, [4, 4, 1]),
])
def test_resolution_of_unitalization(name, make, dims):
    rep = resolution_of_unitalization(make())
    assert rep.dims == dims
    assert rep.homology == [1, 0, 0]
    assert rep.exact


def test_resolution_differentials_compose_to_zero():
    aug, d1, d2 = resolution_differentials(A.dual_numbers())
    assert (d1 @ d2).is_zero() and (aug @ d1).is_zero()


@pytest.mark.parametrize("group, n", [("S1", 1), ("S1", 2), ("SU2", 2), ("SU2", 3)])
def test_adjoint_projection(group, n):
    a, blocks = A.truncated_convolution(group, n)
    rep = check_adjoint_projection(a, blocks)
    assert rep.ok and rep.image_dim == len(blocks.block_sizes)
    P = adjoint_projection(a, blocks)
    assert P @ P == P


def test_morita():
    hh_m2, hh_field = morita_check(2, 3)
    assert hh_m2 == hh_field == [1, 0, 0, 0]


@settings(max_examples=10)
@given(st.lists(st.integers(1, 2), min_size=1, max_size=3))
def test_separability_property(sizes):
    a, _ = A.block_algebra(sizes)
    assert is_separability_idempotent(a, separability_idempotent(a))
