import cmath
import math

import numpy as np
import pytest

from homquantum.catalog import (
    FiniteAbelianGroup,
    GroupMorphism,
    anyonic_hom,
    anyonic_qt,
    anyonic_r,
    bicharacter_r,
    bicharacter_residuals,
    check_group_r,
    cyclic_power_endo,
    exp_bicharacter,
    function_bialgebra,
    group_bialgebra,
    parse_orders,
    pointwise,
)
from homquantum.homstruct import check_all_bialgebra
from homquantum.quasitri import QTHomBialgebra, check_all_qt, check_qt_axioms
from homquantum.twisting import HypothesisError


def test_group_enumeration():
    g = FiniteAbelianGroup((2, 3))
    assert g.order == 6
    assert g.elements[:3] == [(0, 0), (0, 1), (0, 2)]
    assert all(g.index(u) == i for i, u in enumerate(g.elements))
    assert g.mul((1, 2), (1, 2)) == (0, 1)
    assert g.inverse((1, 1)) == (1, 2)
    with pytest.raises(ValueError):
        FiniteAbelianGroup((0,))


def test_trivial_group_bialgebra(cring):
    b = group_bialgebra(FiniteAbelianGroup.cyclic(1), cring)
    assert b.dim == 1
    assert check_all_bialgebra(b).passed


def test_z2_product(cring):
    b = group_bialgebra(FiniteAbelianGroup.cyclic(2), cring)
    assert b.mu[1, 1, 0, 0] == 1
    assert check_all_bialgebra(b).passed


def test_group_r_conditions():
    g = FiniteAbelianGroup.cyclic(4)
    trivial = np.zeros((4, 4))
    trivial[0, 0] = 1
    assert check_group_r(g, trivial) == (0, 0)
    assert max(check_group_r(g, anyonic_r(4))) < 1e-15
    assert min(check_group_r(FiniteAbelianGroup.cyclic(2), np.ones((2, 2)))) > 0


def test_bicharacters(cring):
    g = FiniteAbelianGroup.cyclic(5)
    assert bicharacter_residuals(g, np.ones((5, 5))) == (0, 0)
    assert max(bicharacter_residuals(g, exp_bicharacter(g))) < 1e-14
    bad = pointwise(g, lambda u, v: cmath.exp(2j * math.pi * u[0] / 5))
    assert bicharacter_residuals(g, bad)[1] > 0.1
    with pytest.raises(HypothesisError):
        bicharacter_r(g, bad)


def test_function_bialgebra_qt(cring):
    g = FiniteAbelianGroup.cyclic(4)
    q = QTHomBialgebra(function_bialgebra(g, cring), bicharacter_r(g, exp_bicharacter(g), cring))
    assert check_all_qt(q).passed
    assert check_qt_axioms(QTHomBialgebra(function_bialgebra(g, cring), bicharacter_r(g, np.ones((4, 4))))).passed


def test_anyonic_small_cases(cring):
    assert anyonic_r(1)[0, 0, 0] == 1
    b, r = anyonic_qt(2, cring)
    np.testing.assert_allclose(r[..., 0], [[0.5, 0.5], [0.5, -0.5]], atol=1e-16)
    for n in range(1, 9):
        b, r = anyonic_qt(n, cring)
        assert check_qt_axioms(QTHomBialgebra(b, r)).passed


def test_cyclic_power_surjectivity(cring):
    assert np.array_equal(cyclic_power_endo(4, 1).algebra_matrix(cring)[..., 0], np.eye(4))
    assert not cyclic_power_endo(4, 2).is_surjective
    assert cyclic_power_endo(5, 4).is_surjective
    e = cyclic_power_endo(5, 4)
    assert all(e(e(u)) == u for u in e.group.elements)
    for n in range(2, 9):
        for k in range(1, n):
            assert cyclic_power_endo(n, k).is_surjective == (math.gcd(n, k) == 1)


def test_morphism_must_respect_orders():
    g = FiniteAbelianGroup((2, 4))
    with pytest.raises(ValueError):
        GroupMorphism(g, ((0, 1), (0, 1)))  # the order-2 generator cannot go to an element of order 4
    GroupMorphism(g, ((0, 2), (1, 1)))


def test_function_matrix_is_pullback(cring):
    e = cyclic_power_endo(4, 2)
    m = e.function_matrix(cring)[..., 0]
    # delta_0 o alpha = delta_0 + delta_2
    assert m[:, 0].tolist() == [1, 0, 1, 0]


def test_anyonic_hom_rejects_noncoprime_power():
    with pytest.raises(HypothesisError, match="surjective"):
        anyonic_hom(6, 2, t=1)
    assert check_all_qt(anyonic_hom(6, 2)).passed


def test_parse_orders():
    assert parse_orders("2, 4").orders == (2, 4)
    assert parse_orders([3]).orders == (3,)
