from fractions import Fraction

import pytest

from cyclic_workbench import algebra as A
from cyclic_workbench.chern import (NotATrace, NotIdempotent, chern_character, chern_coefficient,
                                    chern_matrix, normalized_block_trace, pair)
from cyclic_workbench.cyclic import mixed_complex
from cyclic_workbench.linalg import RationalMatrix


def test_coefficients():
    assert [chern_coefficient(n) for n in range(4)] == [1, -2, 12, -120]


@pytest.mark.parametrize("group, n, k", [("S1", 1, 3), ("SU2", 2, 2)])
def test_chern_matrix_is_identity(group, n, k):
    a, blocks = A.truncated_convolution(group, n)
    assert chern_matrix(a, blocks, 4) == RationalMatrix.identity(k)


def test_cycles_are_closed_up_to_degree_four():
    a, blocks = A.block_algebra([1, 2])
    mc = mixed_complex(a, 4)
    for e in [blocks.minimal_idempotent(0), blocks.minimal_idempotent(1), blocks.block_identity(1), a.unit]:
        c = chern_character(a, e, 4, complex=mc)
        assert c.is_closed(mc)
        assert c.max_even_degree == 4


def test_m2_component_shapes():
    a = A.matrix_algebra(2)
    c = chern_character(a, {0: Fraction(1)}, 4)
    assert [len(x) for x in c.components] == [1, 2, 2]


def test_unit_and_zero_idempotents():
    a = A.dual_numbers()
    c = chern_character(a, {0: Fraction(1)}, 4)
    assert c.components == [{0: 1}, {}, {}]
    z = chern_character(A.matrix_algebra(2), {}, 4)
    assert z.components == [{}, {}, {}]


def test_pairing_reads_degree_zero():
    a, blocks = A.truncated_convolution("SU2", 2)
    e = blocks.block_identity(1)
    tau = normalized_block_trace(blocks, 1)
    assert pair(tau, chern_character(a, e, 2)) == tau(e) == 2


def test_errors():
    a = A.matrix_algebra(2)
    with pytest.raises(NotIdempotent):
        chern_character(a, {1: Fraction(1)}, 2)
    with pytest.raises(ValueError):
        chern_character(a, {0: Fraction(1)}, 3)
    c = chern_character(a, {0: Fraction(1)}, 0)
    with pytest.raises(NotATrace):
        pair(A.TraceFunctional((Fraction(1), 0, 0, 0)), c)
