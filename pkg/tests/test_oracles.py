"""The package against the independent reference computations in oracles.py."""
import pytest

import oracles
from cyclic_workbench import algebra as A
from cyclic_workbench.cyclic import _S_power_rank, hc_dims, hp_dims, mixed_complex
from cyclic_workbench.hochschild import hh_dims

SMALL = {
    "field": A.field,
    "dual": A.dual_numbers,
    "M2": lambda: A.matrix_algebra(2),
    "S1 N=1": lambda: A.truncated_convolution("S1", 1)[0],
    "field+dual": lambda: A.direct_sum(A.field(), A.dual_numbers()),
    "unitalized nilpotent": lambda: A.unitalization(A.nilpotent_line()),
}


@pytest.mark.parametrize("name", sorted(SMALL))
def test_hh_against_bar_complex(name):
    a = SMALL[name]()
    cutoff = 3 if a.dim <= 3 else 2
    assert hh_dims(a, cutoff).dims == oracles.hh(a, cutoff)


@pytest.mark.parametrize("name", sorted(SMALL))
def test_hc_against_connes_complex(name):
    a = SMALL[name]()
    cutoff = 3 if a.dim <= 3 else 2
    assert hc_dims(a, cutoff).dims == oracles.hc_connes(a, cutoff)


def test_unnormalized_bicomplex_hc():
    a = A.dual_numbers()
    bc = oracles.Bicomplex(a, 6)
    assert [bc.hc(n) for n in range(6)] == hc_dims(a, 5).dims == [2, 0, 2, 0, 2, 0]


@pytest.mark.parametrize("name, expected", [("field", (1, 0)), ("dual", (1, 0)), ("S1 N=1", (3, 0)),
                                            ("unitalized nilpotent", (1, 0))])
def test_hp_against_stable_images(name, expected):
    a = SMALL[name]()
    assert oracles.hp_oracle(a, 2) == expected
    assert hp_dims(a, 6).periodic == expected


def test_dual_numbers_S_power_ranks():
    # the periodicity image in degree 0 is one-dimensional at every depth
    a = A.dual_numbers()
    bc = oracles.Bicomplex(a, 7)
    mc = mixed_complex(a, 7)
    for k in (1, 2, 3):
        assert bc.S_power_image_rank(0, k) == _S_power_rank(mc, 0, k) == 1
    for k in (1, 2, 3):
        assert bc.S_power_image_rank(1, k) == _S_power_rank(mc, 1, k) == 0
