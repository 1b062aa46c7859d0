import cmath

import numpy as np
import pytest

import oracles
from homquantum.catalog import anyonic_hom
from homquantum.hommodules import b_alpha_v1_matrix, uhsl2_b_alpha
from homquantum.quasitri import is_alpha_invariant
from homquantum.uhsl2 import Uhsl2Model

CASES = oracles.load_fixture()


def test_fixture_matches_regenerated_oracle():
    for c, order, mat in CASES:
        assert np.allclose(mat, oracles.oracle_b_alpha_v1(cmath.exp(2 * c), order), atol=0, rtol=0)


@pytest.mark.parametrize("c,order,mat", CASES, ids=[str(c) for c, _, _ in CASES])
def test_package_matches_fixture(c, order, mat):
    b = b_alpha_v1_matrix(c, order)
    assert np.max(np.abs(b.matrix - mat)) < 1e-12
    via_model = uhsl2_b_alpha(Uhsl2Model(c, order), 1)
    assert np.max(np.abs(via_model.B.matrix - mat)) < 1e-12


@pytest.mark.parametrize("c", oracles.C_VALUES)
def test_oracle_matches_closed_form(c):
    g = cmath.exp(2 * complex(c))
    assert np.max(np.abs(oracles.oracle_b_alpha_v1(g) - oracles.closed_form_b_alpha_v1(g))) < 1e-12


@pytest.mark.parametrize("n", range(2, 9))
def test_anyonic_invariance_oracle(n):
    for k in range(n):
        assert oracles.anyonic_invariance_oracle(n, k) == (is_alpha_invariant(anyonic_hom(n, k)) < 1e-9)
