import numpy as np
import pytest

from conftest import bump
from homquantum.catalog import (
    FiniteAbelianGroup,
    anyonic_hom,
    anyonic_qt,
    bicharacter_r,
    exp_bicharacter,
    function_bialgebra,
)
from homquantum.homstruct import StructureError
from homquantum.quasitri import (
    DIAGRAM_AXIOM,
    QTHomBialgebra,
    check_all_qt,
    check_qhybe,
    check_qhybe_coincide,
    check_qt_axioms,
    equivalence_status,
    is_alpha_invariant,
    lambda_diagram_residuals,
    lambda_maps,
    qt_axiom_residuals,
)


def test_classical_anyon_passes(cring):
    b, r = anyonic_qt(4, cring)
    assert check_qt_axioms(QTHomBialgebra(b, r)).passed


def test_twisted_anyon_n4_k3():
    q = anyonic_hom(4, 3)
    assert max(qt_axiom_residuals(q).values()) < 1e-12


def test_zero_r_is_trivial(cring):
    b, _ = anyonic_qt(2, cring)
    q = QTHomBialgebra(b, cring.zeros((2, 2)))
    assert max(qt_axiom_residuals(q).values()) == 0
    assert check_qhybe(q) == (0.0, 0.0)
    assert max(lambda_diagram_residuals(q).values()) == 0
    lm = lambda_maps(q)
    assert not np.any(lm.lambda1) and not np.any(lm.lambda2_prime)


def test_missing_weak_unit(cring):
    b, r = anyonic_qt(2, cring)
    with pytest.raises(StructureError):
        check_qt_axioms(QTHomBialgebra(b.replace(weak_unit=None), r))


def test_r_shape_checked(cring):
    b, _ = anyonic_qt(2, cring)
    with pytest.raises(StructureError):
        QTHomBialgebra(b, cring.zeros((3, 3)))


@pytest.mark.parametrize("n,k", [(3, 2), (5, 2), (6, 5), (8, 3)])
def test_qhybe_holds(n, k):
    first, second = check_qhybe(anyonic_hom(n, k))
    assert first < 1e-12 and second < 1e-12


def test_classical_bracketings_agree(cring):
    b, r = anyonic_qt(3, cring)
    lhs, rhs = check_qhybe_coincide(QTHomBialgebra(b, r))
    assert lhs < 1e-12 and rhs < 1e-12


def test_random_r_breaks_qhybe(cring):
    b, _ = anyonic_qt(2, cring)
    # a commutative algebra satisfies the QYBE for any R; use a perturbed product instead
    rng = np.random.default_rng(3)
    q = QTHomBialgebra(b.replace(mu=bump(b.mu, (0, 1, 0), 0.1)), cring.lift(rng.normal(size=(2, 2))))
    assert max(check_qhybe(q)) > 1e-6


def test_alpha_invariance():
    assert is_alpha_invariant(anyonic_hom(5, 1)) == 0
    assert is_alpha_invariant(anyonic_hom(5, 4)) < 1e-15
    assert is_alpha_invariant(anyonic_hom(5, 2)) > 0.1


def test_bracketings_differ_without_invariance():
    lhs, _ = check_qhybe_coincide(anyonic_hom(5, 2))
    assert lhs > 1e-3
    assert max(check_qhybe_coincide(anyonic_hom(5, 4))) < 1e-12


def test_lambda_maps_identity_alpha(cring):
    b, r = anyonic_qt(3, cring)
    lm = lambda_maps(QTHomBialgebra(b, r))
    assert np.array_equal(lm.lambda1, lm.lambda1_prime)
    assert np.array_equal(lm.lambda2, lm.lambda2_prime)


def test_lambda1_by_pairing():
    q = anyonic_hom(2)
    lm = lambda_maps(q)
    a, r = q.base.alpha[..., 0], q.R[..., 0]
    for i in range(2):
        # <e^i (x) alpha, R> = sum_j R[i, j] alpha(e_j)
        expected = sum(r[i, j] * a[:, j] for j in range(2))
        np.testing.assert_allclose(lm.lambda1[:, i, 0], expected)


def test_diagram_co_fails_with_axiom():
    q = anyonic_hom(3, 2)
    p = q.with_r(bump(q.R, (0, 1), 1e-2))
    ax, di = qt_axiom_residuals(p), lambda_diagram_residuals(p)
    for d, a in DIAGRAM_AXIOM.items():
        assert (ax[a] > 1e-4) == (di[d] > 1e-4)
        assert equivalence_status(ax[a], di[d], 1e-9) == "agree"


def test_equivalence_status_band():
    assert equivalence_status(1e-12, 1e-12, 1e-9) == "agree"
    assert equivalence_status(1e-3, 1e-12, 1e-9) == "disagree"
    assert equivalence_status(2e-9, 1e-12, 1e-9) == "inconclusive"


def test_check_all_reports_invariance_as_property():
    report = check_all_qt(anyonic_hom(5, 2))
    assert report.passed
    assert report.properties["alpha_invariance"] > 0.1
    assert "alpha_invariance" not in report.residuals


def test_kfun_structure_with_product_group():
    g = FiniteAbelianGroup((2, 3))
    q = QTHomBialgebra(function_bialgebra(g), bicharacter_r(g, exp_bicharacter(g)))
    assert check_all_qt(q).passed
