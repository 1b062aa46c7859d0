import cmath

import numpy as np
import pytest

from homquantum.scalars import ScalarRing, q_integer, q_power
from homquantum.tensor import LinearOperator, TensorElement, apply, compose
from homquantum.uhsl2 import (
    Uhsl2Model,
    intertwining_residual,
    r_invariance_residual,
    uhsl2_generator_alpha_images,
    uhsl2_r_operator,
    vn_action,
    vn_alpha,
)


def test_v0_is_trivial(hring):
    act = vn_action(0, hring)
    assert all(not np.any(op.matrix) for op in act.values())
    np.testing.assert_array_equal(uhsl2_r_operator(0, 0, hring).matrix, LinearOperator.identity(hring, (1, 1)).matrix)


def test_v1_action(hring):
    act = vn_action(1, hring)
    assert act["X+"].entry(0, 1) == 1
    assert act["X-"].entry(1, 0) == 1
    assert act["H"].entry(0, 0) == 1 and act["H"].entry(1, 1) == -1


def test_v2_lowering(hring):
    assert vn_action(2, hring)["X-"].entry(2, 1) == q_integer(2, hring)


def test_sl2_relations_hold_on_vn(hring):
    # [X+, X-] = (q^H - q^-H) / (q - q^-1) = [H]_q on each weight vector
    for n in range(4):
        act = vn_action(n, hring)
        comm = compose(act["X+"], act["X-"]).matrix - compose(act["X-"], act["X+"]).matrix
        for i in range(n + 1):
            w = n - 2 * i
            target = q_integer(abs(w), hring) * (1 if w >= 0 else -1)
            np.testing.assert_allclose(comm[i, i], target.coeffs, atol=1e-12)


def test_alpha_diagonal(hring):
    assert np.array_equal(vn_alpha(3, 1.0, hring).matrix, LinearOperator.identity(hring, (4,)).matrix)
    a = vn_alpha(1, cmath.exp(2), hring)
    assert a.entry(1, 1).constant == pytest.approx(cmath.exp(-2))
    with pytest.raises(ValueError):
        vn_alpha(1, 0)


def test_complex_ring_rejected():
    with pytest.raises(ValueError):
        vn_action(1, ScalarRing.complex())


def test_r_on_v0_v1(hring):
    r = uhsl2_r_operator(1, 1, hring)
    x = apply(r, TensorElement.basis(hring, (2, 2), (0, 1)))
    assert x.entry(0, 1) == q_power(-0.5, hring)
    assert x.entry(1, 0) == 0


def test_r_two_term_form(hring):
    # R = q^{HH/2} + (1 - q^-2) q^{(HH + H1 - 1H)/2} (X+ (x) X-) on V1 (x) V1
    r = uhsl2_r_operator(1, 1, hring)
    expected = {0: q_power(0.5, hring), 1: q_power(-0.5, hring), 2: q_power(-0.5, hring), 3: q_power(0.5, hring)}
    for idx, val in expected.items():
        assert r.entry(idx, idx) == val
    assert r.entry(1, 2) == (1 - q_power(-2, hring)) * q_power(0.5, hring)


def test_generator_images():
    assert uhsl2_generator_alpha_images(1.0) == (1.0, 1.0, 1.0)
    g = cmath.exp(0.6)
    assert uhsl2_generator_alpha_images(g)[1] == g


@pytest.mark.parametrize("c", [0, 0.3, 1 + 0.5j])
def test_intertwining_and_invariance(c):
    m = Uhsl2Model(c)
    for n in range(4):
        assert intertwining_residual(m, n) < 1e-12
        assert r_invariance_residual(m, n) < 1e-12


def test_model_fields():
    m = Uhsl2Model(0.5, order=4)
    assert m.ring.ncoef == 5
    assert m.gamma == pytest.approx(cmath.exp(1))
    assert m.generator_alpha()["X-"] == pytest.approx(cmath.exp(-1))
