"""Twisting constructions.

* structure twist: a bialgebra morphism ``alpha`` turns ``(A, mu, Delta, R)`` into
  ``(A, alpha o mu, Delta o alpha, alpha, 1, R)``.
* R-twist: with ``alpha`` invertible, ``R`` may be replaced by
  ``(alpha^n (x) alpha^n)(R)``.

Constructors re-verify what they build unless ``verify=False``.
"""

from __future__ import annotations

import numpy as np

from .homstruct import (
    HomBialgebra,
    VerificationReport,
    check_all_bialgebra,
    check_comultiplicativity,
    check_multiplicativity,
)
from .quasitri import QTHomBialgebra, check_all_qt, check_qt_axioms
from .scalars import norm, series_einsum, series_matmul


class HypothesisError(ValueError):
    """A construction was asked for outside the hypotheses that make it valid."""


class VerificationError(RuntimeError):
    """A constructed structure failed its own re-verification."""

    def __init__(self, message: str, report: VerificationReport):
        super().__init__(f"{message}: failing {report.failing}")
        self.report = report


def _tol(b: HomBialgebra, tolerance: float | None) -> float:
    return tolerance if tolerance is not None else b.ring.tolerance


def _is_identity(alpha: np.ndarray) -> bool:
    d = alpha.shape[0]
    expected = np.zeros_like(alpha)
    expected[..., 0] = np.eye(d)
    return np.array_equal(alpha, expected)


def _require_classical(b: HomBialgebra) -> None:
    if not _is_identity(b.alpha):
        raise HypothesisError("the input must be a classical bialgebra (twisting map = identity)")


def check_bialgebra_morphism(alpha: np.ndarray, b: HomBialgebra) -> float:
    """Max residual of ``alpha o mu = mu o alpha^{(x)2}`` and ``alpha^{(x)2} o Delta = Delta o alpha``."""
    probe = b.replace(alpha=alpha, weak_unit=None)
    return max(check_multiplicativity(probe), check_comultiplicativity(probe))


def yau_twist(b: HomBialgebra, alpha: np.ndarray, *, verify: bool = True, tolerance: float | None = None) -> HomBialgebra:
    _require_classical(b)
    alpha = np.asarray(alpha, dtype=complex)
    tol = _tol(b, tolerance)
    residual = check_bialgebra_morphism(alpha, b)
    if not residual < tol:
        raise HypothesisError(f"alpha is not a bialgebra morphism (residual {residual:.3e})")
    mu_alpha = series_einsum("ijp,kp->ijk", b.mu, alpha)
    delta_alpha = series_einsum("pk,pab->kab", alpha, b.delta)
    # the classical unit (if recorded) becomes a weak unit
    twisted = HomBialgebra(b.ring, mu_alpha, delta_alpha, alpha, b.weak_unit)
    if verify:
        report = check_all_bialgebra(twisted, tol)
        if not report.passed:
            raise VerificationError("twisting by alpha produced an invalid Hom-bialgebra", report)
    return twisted


def check_classical_qt(b: HomBialgebra, r: np.ndarray, tolerance: float | None = None) -> VerificationReport:
    """The three quasi-triangular axioms of a classical bialgebra with its unit."""
    _require_classical(b)
    if b.weak_unit is None:
        raise HypothesisError("the classical bialgebra has no recorded unit")
    return check_qt_axioms(QTHomBialgebra(b, r), tolerance)


def qt_yau_twist(
    b: HomBialgebra, r: np.ndarray, alpha: np.ndarray, *, verify: bool = True, tolerance: float | None = None
) -> QTHomBialgebra:
    """``(A, mu_alpha, Delta_alpha, alpha, 1, R)``; R need not be invertible."""
    tol = _tol(b, tolerance)
    pre = check_classical_qt(b, r, tol)
    if not pre.passed:
        raise HypothesisError(f"(A, R) is not quasi-triangular: failing {pre.failing}")
    q = QTHomBialgebra(yau_twist(b, alpha, verify=verify, tolerance=tol), r)
    if verify:
        report = check_all_qt(q, tol)
        if not report.passed:
            raise VerificationError("twisting by alpha produced an invalid quasi-triangular structure", report)
    return q


def matrix_power(alpha: np.ndarray, n: int) -> np.ndarray:
    d = alpha.shape[0]
    result = np.zeros_like(alpha)
    result[..., 0] = np.eye(d)
    for _ in range(n):
        result = series_matmul(alpha, result)
    return result


def is_surjective(alpha: np.ndarray) -> bool:
    """A finite-dimensional endomorphism is onto iff its constant part is invertible."""
    a0 = np.asarray(alpha)[..., 0]
    return np.linalg.matrix_rank(a0) == a0.shape[0]


def twist_r(q: QTHomBialgebra, n: int, *, verify: bool = True, tolerance: float | None = None) -> QTHomBialgebra:
    """Replace ``R`` by ``(alpha^n (x) alpha^n)(R)``."""
    if n < 1:
        raise ValueError("the power n must be >= 1")
    if not is_surjective(q.base.alpha):
        raise HypothesisError("alpha not surjective (required to twist R by powers of alpha)")
    an = matrix_power(q.base.alpha, n)
    twisted = q.with_r(series_einsum("ap,pq,bq->ab", an, q.R, an))
    if verify:
        report = check_qt_axioms(twisted, _tol(q.base, tolerance))
        if not report.passed:
            raise VerificationError("R-twist produced an invalid quasi-triangular structure", report)
    return twisted


def qt_yau_twist_powered(
    b: HomBialgebra, r: np.ndarray, alpha: np.ndarray, n: int, *, verify: bool = True, tolerance: float | None = None
) -> QTHomBialgebra:
    if not is_surjective(alpha):
        raise HypothesisError("alpha not surjective (required to twist R by powers of alpha)")
    q = qt_yau_twist(b, r, alpha, verify=verify, tolerance=tolerance)
    return twist_r(q, n, verify=verify, tolerance=tolerance)


def r_difference(a: QTHomBialgebra, b: QTHomBialgebra) -> float:
    return norm(a.R - b.R)
