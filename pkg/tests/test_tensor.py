import numpy as np
import pytest

from homquantum.scalars import RingMismatchError, ScalarRing
from homquantum.tensor import (
    LinearOperator,
    ShapeError,
    TensorElement,
    apply,
    compose,
    compose_all,
    embed_r,
    inverse,
    kron,
    leg_permute,
    legwise_multiply,
    operator_from_json,
    operator_to_json,
    twist_operator,
)


def test_basis_index_order(cring):
    e = TensorElement.basis(cring, (2, 3), (1, 2))
    assert e.flat[:, 0].tolist() == [0, 0, 0, 0, 0, 1]


def test_outer_product_legs(cring):
    a = TensorElement(cring, (2,), cring.lift([1, 2]))
    b = TensorElement(cring, (3,), cring.lift([1, 0, -1]))
    ab = a.tensor(b)
    assert ab.leg_dims == (2, 3)
    assert ab.entry(1, 2).constant == -2


def test_twist_columns_are_images(cring):
    tau = twist_operator(cring, 2, 3)
    x = TensorElement.basis(cring, (2, 3), (1, 0))
    y = apply(tau, x)
    assert y.leg_dims == (3, 2)
    assert y.entry(0, 1).constant == 1


def test_twist_is_involution(cring):
    t = compose(twist_operator(cring, 3, 2), twist_operator(cring, 2, 3))
    assert np.array_equal(t.matrix, LinearOperator.identity(cring, (2, 3)).matrix)


def test_kron_matches_numpy(cring):
    rng = np.random.default_rng(1)
    a, b = rng.normal(size=(2, 2)), rng.normal(size=(3, 3))
    k = kron(LinearOperator.from_complex(cring, a), LinearOperator.from_complex(cring, b))
    np.testing.assert_allclose(k.matrix[..., 0], np.kron(a, b))


def test_compose_order(cring):
    a = LinearOperator.from_complex(cring, [[0, 1], [0, 0]])
    b = LinearOperator.from_complex(cring, [[0, 0], [1, 0]])
    # a o b sends e0 -> e1 -> e0
    assert compose(a, b).entry(0, 0).constant == 1
    assert compose_all(a, b, a).entry(0, 1).constant == 1


def test_compose_shape_mismatch(cring):
    with pytest.raises(ShapeError):
        compose(LinearOperator.identity(cring, (2,)), LinearOperator.identity(cring, (3,)))


def test_inverse_series(hring):
    m = hring.zeros((2, 2))
    m[0, 0, 0] = 2
    m[1, 1, 0] = 1
    m[0, 1, 1] = 3
    m[1, 0, 2] = -1
    a = LinearOperator(hring, (2,), (2,), m)
    ident = compose(a, inverse(a))
    np.testing.assert_allclose(ident.matrix, LinearOperator.identity(hring, (2,)).matrix, atol=1e-14)


def test_inverse_singular(cring):
    with pytest.raises(np.linalg.LinAlgError):
        inverse(LinearOperator.from_complex(cring, [[1, 1], [1, 1]]))


def test_leg_permute(cring):
    x = TensorElement.basis(cring, (2, 3, 4), (1, 2, 3))
    y = leg_permute(x, (2, 0, 1))
    assert y.leg_dims == (4, 2, 3)
    assert y.entry(3, 1, 2).constant == 1


def test_embed_r(cring):
    r = TensorElement(cring, (2, 2), cring.lift([[1, 2], [3, 4]]))
    c = TensorElement(cring, (2,), cring.lift([1, 0]))
    r13 = embed_r(r, c, "13")
    # R13 = sum R[i, j] e_i (x) c (x) e_j
    assert r13.entry(1, 0, 0).constant == 3
    assert r13.entry(1, 1, 0).constant == 0
    with pytest.raises(ValueError):
        embed_r(r, c, "21")


def test_legwise_multiply_group_algebra(cring):
    # Z/2: e0 unit, e1 e1 = e0
    mu = np.zeros((2, 2, 2))
    for i in range(2):
        for j in range(2):
            mu[i, j, (i + j) % 2] = 1
    x = TensorElement.basis(cring, (2, 2), (1, 0))
    y = TensorElement.basis(cring, (2, 2), (1, 1))
    assert legwise_multiply(x, y, cring.lift(mu)).entry(0, 1).constant == 1


def test_ring_mismatch_in_kron(cring, hring):
    with pytest.raises(RingMismatchError):
        kron(LinearOperator.identity(cring, (2,)), LinearOperator.identity(hring, (2,)))


def test_operator_json_round_trip(hring):
    a = LinearOperator(hring, (2,), (2,), np.arange(2 * 2 * 9).reshape(2, 2, 9) * (1 + 1j))
    b = operator_from_json(operator_to_json(a))
    assert np.array_equal(a.matrix, b.matrix)
    assert b.in_dims == (2,)


def test_bad_shapes(cring):
    with pytest.raises(ShapeError):
        TensorElement(cring, (2, 2), cring.zeros((3,)))
    with pytest.raises(ShapeError):
        LinearOperator(cring, (2,), (2,), cring.zeros((2, 3)))
