import cmath
import math

import numpy as np
import pytest

from homquantum.scalars import (
    NotInvertibleError,
    RingMismatchError,
    Scalar,
    ScalarRing,
    array_from_json,
    array_to_json,
    q_binomial,
    q_factorial,
    q_integer,
    q_power,
    ring_from_json,
    root_of_unity,
    scalar_from_json,
    scalar_to_json,
    series_einsum,
    series_exp,
    series_invert,
)


def test_complex_arithmetic(cring):
    a, b = cring.scalar(1 + 2j), cring.scalar(3 - 1j)
    assert a * b == cring.scalar((1 + 2j) * (3 - 1j))
    assert a / b == cring.scalar((1 + 2j) / (3 - 1j))
    assert a - a == 0
    assert (a**3).constant == pytest.approx((1 + 2j) ** 3)


def test_tolerance_equality(cring):
    assert cring.scalar(1.0) == cring.scalar(1.0 + 1e-12)
    assert not cring.scalar(1.0) == cring.scalar(1.0 + 1e-6)


def test_ring_mismatch(cring, hring):
    with pytest.raises(RingMismatchError):
        cring.one() + hring.one()
    with pytest.raises(RingMismatchError):
        cring.h()


def test_h_is_nilpotent_at_truncation():
    ring = ScalarRing.hseries(3)
    h = ring.h()
    assert (h**3).coeffs[3] == 1
    assert (h**4).is_zero()


def test_exp_of_h(hring):
    e = series_exp(hring.h())
    np.testing.assert_allclose(e.coeffs.real, [1 / math.factorial(k) for k in range(9)])


def test_exp_with_constant_term(hring):
    x = hring.series([0.5, 1.0])
    e = series_exp(x)
    assert e.constant == pytest.approx(cmath.exp(0.5))
    assert e.coeffs[1] == pytest.approx(cmath.exp(0.5))


def test_series_invert(hring):
    x = hring.series([2.0, 1.0, -3.0])
    assert x * series_invert(x) == hring.one()


def test_non_invertible(hring):
    # q - q^{-1} starts at order h
    with pytest.raises(NotInvertibleError):
        series_invert(q_power(1, hring) - q_power(-1, hring))


def test_q_integers(hring):
    assert q_integer(0, hring) == 0
    assert q_integer(1, hring) == 1
    assert q_integer(2, hring) == q_power(1, hring) + q_power(-1, hring)
    assert q_integer(3, hring).constant == pytest.approx(3)
    # [m]_q (q - q^-1) = q^m - q^-m
    qq = q_power(1, hring) - q_power(-1, hring)
    for m in range(6):
        assert q_integer(m, hring) * qq == q_power(m, hring) - q_power(-m, hring)


def test_q_factorial_and_binomial(hring):
    assert q_factorial(3, hring) == q_integer(2, hring) * q_integer(3, hring)
    assert q_binomial(4, 0, hring) == 1
    assert q_binomial(4, 1, hring) == q_integer(4, hring)
    with pytest.raises(ValueError):
        q_binomial(2, 3, hring)


def test_root_of_unity(cring, hring):
    assert root_of_unity(4, 1, cring) == cring.scalar(1j)
    assert root_of_unity(4, 5, cring) == cring.scalar(1j)
    assert root_of_unity(4, 2, cring).constant == -1
    with pytest.raises(RingMismatchError):
        root_of_unity(4, 1, hring)


def test_series_einsum_truncates(hring):
    a = hring.zeros((2,))
    a[:, 5] = 1
    out = series_einsum("i,i->", a, a)
    assert np.all(out == 0)


def test_scalar_json_round_trip(cring, hring):
    for ring, value in [(cring, cring.scalar(1 - 2j)), (hring, q_power(0.5, hring))]:
        obj = scalar_to_json(value.coeffs, ring)
        back = scalar_from_json(obj, ring)
        assert np.array_equal(back, value.coeffs)


def test_negative_zero_serializes_as_zero(cring):
    assert scalar_to_json(np.array([complex(-0.0, -0.0)]), cring) == [0.0, 0.0]
    assert str(scalar_to_json(np.array([complex(-0.0, -0.0)]), cring)) == "[0.0, 0.0]"


def test_array_json_errors_name_the_path(cring):
    with pytest.raises(ValueError, match=r"mu\[1\]"):
        array_from_json([[[1, 0]], [[1, 0], 3]], (2, 1), cring, "mu")
    arr = cring.lift(np.eye(2))
    assert np.array_equal(array_from_json(array_to_json(arr, cring), (2, 2), cring), arr)


def test_ring_json():
    assert ring_from_json(None) == ScalarRing.complex()
    assert ring_from_json({"kind": "hseries", "order": 4}).ncoef == 5
    with pytest.raises(ValueError):
        ring_from_json({"kind": "quaternion"})


def test_scalar_shape_checked(cring):
    with pytest.raises(ValueError):
        Scalar(cring, [1, 2])
