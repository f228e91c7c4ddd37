"""Hochschild homology; golden values were produced by tests/oracles.py
(unnormalized bar complex, sympy ranks) before being frozen here."""
import pytest
from hypothesis import given, settings

from cyclic_workbench import algebra as A
from cyclic_workbench.cache import DiffCache
from cyclic_workbench.hochschild import (SizeLimit, TensorBasis, hh_cohomology_dims, hh_dims,
                                         hochschild_complex)
from strategies import change_basis, invertible_matrices

GOLDEN_HH = {
    "field": (A.field, 4, [1, 0, 0, 0, 0]),
    "M2": (lambda: A.matrix_algebra(2), 4, [1, 0, 0, 0, 0]),
    "dual": (A.dual_numbers, 4, [2, 1, 1, 1, 1]),
    "S1 N=1": (lambda: A.truncated_convolution("S1", 1)[0], 3, [3, 0, 0, 0]),
    "S1 N=2": (lambda: A.truncated_convolution("S1", 2)[0], 3, [5, 0, 0, 0]),
    "SU2 N=2": (lambda: A.truncated_convolution("SU2", 2)[0], 3, [2, 0, 0, 0]),
    "dual+M2": (lambda: A.direct_sum(A.dual_numbers(), A.matrix_algebra(2)), 3, [3, 1, 1, 1]),
}


@pytest.mark.parametrize("name", sorted(GOLDEN_HH))
def test_hh_golden(name):
    make, cutoff, expected = GOLDEN_HH[name]
    rep = hh_dims(make(), cutoff)
    assert rep.dims == expected
    assert rep.flags == [True] * (cutoff + 1)
    assert rep.theory == "HH"


@pytest.mark.parametrize("name", ["field", "dual", "S1 N=1"])
def test_unnormalized_agrees(name):
    make, cutoff, expected = GOLDEN_HH[name]
    assert hh_dims(make(), min(cutoff, 3), normalized=False).dims == expected[:min(cutoff, 3) + 1]


@pytest.mark.parametrize("name", ["M2", "dual", "SU2 N=2"])
def test_cohomology_dims_match_homology(name):
    make, cutoff, expected = GOLDEN_HH[name]
    assert hh_cohomology_dims(make(), 3).dims == expected[:4]


def test_normalized_basis_sizes():
    tb = TensorBasis(A.matrix_algebra(2), True)
    assert [tb.size(n) for n in range(4)] == [4, 12, 36, 108]
    tb = TensorBasis(A.matrix_algebra(2), False)
    assert [tb.size(n) for n in range(3)] == [4, 16, 64]


def test_hh0_is_commutator_quotient():
    for a in [A.matrix_algebra(3), A.dual_numbers(), A.truncated_convolution("SU2", 3)[0]]:
        assert hh_dims(a, 0).dims[0] == A.commutator_quotient_dim(a)


def test_differentials_square_to_zero():
    cx = hochschild_complex(A.direct_sum(A.dual_numbers(), A.field()), 4)
    for n in range(1, 4):
        assert (cx.d(n) @ cx.d(n + 1)).is_zero()


def test_size_limit_names_degree():
    with pytest.raises(SizeLimit) as info:
        hh_dims(A.matrix_algebra(10), 4)
    assert info.value.degree == 3 and info.value.size > 10**6


def test_non_unital_rejected():
    with pytest.raises(A.NotUnital):
        hh_dims(A.nilpotent_line(), 2)
    assert hh_dims(A.unitalization(A.nilpotent_line()), 2).dims == [2, 1, 1]


def test_cache_hit_equals_miss(tmp_path):
    cache = DiffCache(tmp_path)
    a = A.truncated_convolution("SU2", 2)[0]
    cold = hh_dims(a, 3, cache=cache)
    assert cache.misses > 0 and cache.hits == 0
    warm_cache = DiffCache(tmp_path)
    warm = hh_dims(a, 3, cache=warm_cache)
    assert warm_cache.hits > 0 and warm_cache.misses == 0
    assert cold.to_dict() == warm.to_dict()


def test_report_to_dict_shape():
    d = hh_dims(A.field(), 2).to_dict()
    assert set(d) == {"theory", "dims", "cutoff", "flags", "normalized", "certificates"}
    assert d["flags"] == ["reliable"] * 3


@settings(max_examples=15)
@given(invertible_matrices(2))
def test_hh_invariant_under_basis_change(p):
    a = change_basis(A.dual_numbers(), p.to_dense())
    assert hh_dims(a, 2).dims == [2, 1, 1]


@settings(max_examples=10)
@given(invertible_matrices(4))
def test_hh_of_m2_invariant_under_basis_change(p):
    a = change_basis(A.matrix_algebra(2), p.to_dense())
    assert hh_dims(a, 2).dims == [1, 0, 0]
