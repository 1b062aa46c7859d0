import numpy as np
import pytest

from conftest import bump
from homquantum.catalog import FiniteAbelianGroup, cyclic_power_endo, function_bialgebra, group_bialgebra
from homquantum.homstruct import (
    HomAlgebra,
    HomBialgebra,
    StructureError,
    VerificationReport,
    check_all_bialgebra,
    check_compatibility,
    check_comultiplicativity,
    check_hom_associativity,
    check_hom_coassociativity,
    check_multiplicativity,
    check_weak_unit,
    dualize,
    structures_equal,
    weak_unit_residuals,
)
from homquantum.twisting import yau_twist

Z2 = FiniteAbelianGroup.cyclic(2)
Z3 = FiniteAbelianGroup.cyclic(3)


@pytest.fixture
def twisted_z3(cring):
    b = group_bialgebra(Z3, cring)
    return yau_twist(b, cyclic_power_endo(3, 2).algebra_matrix(cring))


def test_classical_group_algebra_passes(cring):
    report = check_all_bialgebra(group_bialgebra(Z2, cring))
    assert report.passed
    assert set(report.residuals) >= {"multiplicativity", "hom_associativity", "compatibility", "weak_unit"}


def test_twisted_z3_passes(twisted_z3):
    assert check_hom_associativity(twisted_z3) == 0
    assert check_all_bialgebra(twisted_z3).passed


def test_perturbed_mu_detected(twisted_z3):
    b = twisted_z3.replace(mu=bump(twisted_z3.mu, (0, 0, 0), 1e-3))
    assert check_hom_associativity(b) >= 5e-4


def test_scaling_breaks_multiplicativity(cring):
    b = group_bialgebra(Z2, cring)
    doubled = b.replace(alpha=2 * b.alpha, weak_unit=None)
    assert check_multiplicativity(doubled) == pytest.approx(2.0)


def test_perturbed_delta_detected(twisted_z3):
    b = twisted_z3.replace(delta=bump(twisted_z3.delta, (0, 0, 1), 1e-3))
    assert check_hom_coassociativity(b) > 0
    assert check_comultiplicativity(b) > 0


def test_zero_coproduct_on_one_element(cring):
    b = group_bialgebra(Z3, cring)
    delta = np.array(b.delta)
    delta[1] = 0
    assert check_compatibility(b.replace(delta=delta)) > 0


def test_weak_unit(twisted_z3, cring):
    assert check_weak_unit(twisted_z3) == 0
    left, right = weak_unit_residuals(twisted_z3, cring.zeros((3,)))
    assert left == right > 0
    with pytest.raises(StructureError):
        check_weak_unit(twisted_z3.replace(weak_unit=None))


def test_dualize_is_involution(twisted_z3):
    d2 = dualize(dualize(twisted_z3))
    assert structures_equal(d2, twisted_z3.replace(weak_unit=None))


def test_dual_of_group_algebra_is_function_algebra(cring):
    g = FiniteAbelianGroup((2, 2))
    assert structures_equal(dualize(group_bialgebra(g, cring)), function_bialgebra(g, cring).replace(weak_unit=None))


def test_dual_passes(twisted_z3):
    assert check_all_bialgebra(dualize(twisted_z3)).passed


def test_rejects_empty_and_bad_shapes(cring):
    with pytest.raises(StructureError):
        HomAlgebra(cring, cring.zeros((0, 0, 0)), cring.zeros((0, 0)))
    with pytest.raises(StructureError):
        HomBialgebra(cring, cring.zeros((2, 2, 2)), cring.zeros((3, 3, 3)), cring.zeros((2, 2)))
    with pytest.raises(StructureError):
        HomBialgebra(cring, cring.zeros((2, 2, 2)), cring.zeros((2, 2, 2)), cring.zeros((2, 2)), cring.zeros((3,)))


def test_structures_are_immutable(twisted_z3):
    with pytest.raises(ValueError):
        twisted_z3.mu[0, 0, 0, 0] = 5


def test_report_json():
    r = VerificationReport({"a": 0.0, "b": 1.0}, 1e-9)
    assert not r.passed
    assert r.failing == ["b"]
    assert r.to_json() == {"axioms": {"a": 0.0, "b": 1.0}, "tolerance": 1e-9, "pass": False}
