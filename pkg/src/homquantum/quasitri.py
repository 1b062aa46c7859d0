"""Quasi-triangular Hom-bialgebras: axioms, both QHYBE bracketings, and the lambda-map diagrams.

``R`` is stored as a ``(d, d, K)`` array with ``R = sum R[i, j] e_i (x) e_j``.
Products in ``A^{(x)3}`` are computed leg by leg with the Hom-multiplication,
with exactly the bracketings written in each docstring; nothing is re-associated.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .homstruct import HomBialgebra, StructureError, VerificationReport, check_all_bialgebra, dualize
from .scalars import norm, series_einsum
from .tensor import TensorElement, embed_r, legwise_multiply


@dataclass(frozen=True, eq=False)
class QTHomBialgebra:
    base: HomBialgebra
    R: np.ndarray = field(repr=False)

    def __post_init__(self):
        r = np.array(self.R, dtype=complex)
        d, K = self.base.dim, self.base.ring.ncoef
        if r.shape != (d, d, K):
            raise StructureError(f"R has shape {r.shape[:-1]}, expected {(d, d)}")
        r.setflags(write=False)
        object.__setattr__(self, "R", r)

    @property
    def ring(self):
        return self.base.ring

    @property
    def dim(self) -> int:
        return self.base.dim

    def with_r(self, r: np.ndarray) -> QTHomBialgebra:
        return QTHomBialgebra(self.base, r)

    # tensor-element views used by the checkers
    def _r(self) -> TensorElement:
        return TensorElement(self.ring, (self.dim, self.dim), self.R)

    def _c(self) -> TensorElement:
        if self.base.weak_unit is None:
            raise StructureError("quasi-triangular checks need a weak unit c")
        return TensorElement(self.ring, (self.dim,), self.base.weak_unit)

    def legs(self) -> tuple[TensorElement, TensorElement, TensorElement]:
        """``(R12, R13, R23)`` padded with the weak unit."""
        r, c = self._r(), self._c()
        return embed_r(r, c, "12"), embed_r(r, c, "13"), embed_r(r, c, "23")

    def mul(self, x: TensorElement, y: TensorElement) -> TensorElement:
        return legwise_multiply(x, y, self.base.mu)


def _report(residuals: dict[str, float], q: QTHomBialgebra, tolerance: float | None) -> VerificationReport:
    return VerificationReport(residuals, tolerance if tolerance is not None else q.ring.tolerance)


def qt_axiom_residuals(q: QTHomBialgebra) -> dict[str, float]:
    b = q.base
    r12, r13, r23 = q.legs()
    # (Delta (x) alpha)(R) = R13 R23
    lhs1 = series_einsum("pq,pab,cq->abc", q.R, b.delta, b.alpha)
    ax1 = norm(lhs1 - q.mul(r13, r23).coeffs)
    # (alpha (x) Delta)(R) = R13 R12
    lhs2 = series_einsum("pq,ap,qbc->abc", q.R, b.alpha, b.delta)
    ax2 = norm(lhs2 - q.mul(r13, r12).coeffs)
    # [(tau o Delta)(x)] R = R Delta(x), one basis element at a time
    r = q._r()
    ax3 = 0.0
    for x in range(q.dim):
        dx = TensorElement(q.ring, (q.dim, q.dim), b.delta[x])
        tdx = TensorElement(q.ring, (q.dim, q.dim), np.swapaxes(b.delta[x], 0, 1))
        ax3 = max(ax3, norm(q.mul(tdx, r).coeffs - q.mul(r, dx).coeffs))
    return {"qt_delta_alpha": ax1, "qt_alpha_delta": ax2, "qt_opposite": ax3}


def check_qt_axioms(q: QTHomBialgebra, tolerance: float | None = None) -> VerificationReport:
    return _report(qt_axiom_residuals(q), q, tolerance)


def qhybe_sides(q: QTHomBialgebra) -> dict[str, TensorElement]:
    """The four bracketed products appearing in the two QHYBE forms."""
    r12, r13, r23 = q.legs()
    return {
        "(R12R13)R23": q.mul(q.mul(r12, r13), r23),
        "R23(R13R12)": q.mul(r23, q.mul(r13, r12)),
        "R12(R13R23)": q.mul(r12, q.mul(r13, r23)),
        "(R23R13)R12": q.mul(q.mul(r23, r13), r12),
    }


def check_qhybe(q: QTHomBialgebra) -> tuple[float, float]:
    """Residuals of ``(R12R13)R23 = R23(R13R12)`` and ``R12(R13R23) = (R23R13)R12``."""
    s = qhybe_sides(q)
    first = norm(s["(R12R13)R23"].coeffs - s["R23(R13R12)"].coeffs)
    second = norm(s["R12(R13R23)"].coeffs - s["(R23R13)R12"].coeffs)
    return first, second


def check_qhybe_coincide(q: QTHomBialgebra) -> tuple[float, float]:
    """How far apart the two bracketings are, left-hand sides then right-hand sides."""
    s = qhybe_sides(q)
    lhs = norm(s["(R12R13)R23"].coeffs - s["R12(R13R23)"].coeffs)
    rhs = norm(s["R23(R13R12)"].coeffs - s["(R23R13)R12"].coeffs)
    return lhs, rhs


def alpha_squared_r(q: QTHomBialgebra) -> np.ndarray:
    """``(alpha (x) alpha)(R)``, i.e. ``alpha R alpha^T`` in matrix form."""
    a = q.base.alpha
    return series_einsum("ap,pq,bq->ab", a, q.R, a)


def is_alpha_invariant(q: QTHomBialgebra) -> float:
    return norm(alpha_squared_r(q) - q.R)


@dataclass(frozen=True)
class LambdaMaps:
    """The four maps ``A* -> A``; column ``i`` is the image of the dual basis vector ``e^i``."""

    lambda1: np.ndarray
    lambda1_prime: np.ndarray
    lambda2: np.ndarray
    lambda2_prime: np.ndarray


def lambda_maps(q: QTHomBialgebra) -> LambdaMaps:
    a, r = q.base.alpha, q.R
    return LambdaMaps(
        # <e^i (x) alpha, R> = sum_q R[i, q] alpha(e_q)
        lambda1=series_einsum("kq,iq->ki", a, r),
        # <alpha*(e^i) (x) Id, R> = sum_{p,q} alpha[i, p] R[p, q] e_q
        lambda1_prime=series_einsum("ip,pq->qi", a, r),
        # <alpha (x) e^i, R> = sum_p R[p, i] alpha(e_p)
        lambda2=series_einsum("kp,pi->ki", a, r),
        # <Id (x) alpha*(e^i), R> = sum_{p,q} R[p, q] alpha[i, q] e_p
        lambda2_prime=series_einsum("pq,iq->pi", r, a),
    )


def lambda_diagram_residuals(q: QTHomBialgebra) -> dict[str, float]:
    """Failure of the four squares; each pairs with one of the first two QT axioms."""
    b = q.base
    dual = dualize(b)
    delta_star = dual.mu  # Delta*(e^i, e^j) = sum_k delta_star[i, j, k] e^k
    mu_star = dual.delta  # mu*(e^k) = sum mu_star[k, i, j] e^i (x) e^j
    lm = lambda_maps(q)
    l1, l1p, l2, l2p = lm.lambda1, lm.lambda1_prime, lm.lambda2, lm.lambda2_prime

    # lambda1 o Delta* = mu o (lambda1' (x) lambda1')
    d1 = series_einsum("ijk,ok->ijo", delta_star, l1) - series_einsum("ai,bj,abo->ijo", l1p, l1p, b.mu)
    # Delta o lambda2' = (lambda2 (x) lambda2) o mu*
    d2 = series_einsum("pk,pab->kab", l2p, b.delta) - series_einsum("kij,ai,bj->kab", mu_star, l2, l2)
    # lambda2 o Delta* = mu^op o (lambda2' (x) lambda2')
    d3 = series_einsum("ijk,ok->ijo", delta_star, l2) - series_einsum("ai,bj,bao->ijo", l2p, l2p, b.mu)
    # Delta o lambda1' = (lambda1 (x) lambda1) o tau o mu*
    d4 = series_einsum("pk,pab->kab", l1p, b.delta) - series_einsum("kij,aj,bi->kab", mu_star, l1, l1)
    return {
        "diagram_mu_lambda1": norm(d1),
        "diagram_delta_lambda2": norm(d2),
        "diagram_muop_lambda2": norm(d3),
        "diagram_delta_lambda1": norm(d4),
    }


def check_lambda_diagrams(q: QTHomBialgebra, tolerance: float | None = None) -> VerificationReport:
    return _report(lambda_diagram_residuals(q), q, tolerance)


# which QT axiom each diagram is equivalent to
DIAGRAM_AXIOM = {
    "diagram_mu_lambda1": "qt_delta_alpha",
    "diagram_delta_lambda2": "qt_delta_alpha",
    "diagram_muop_lambda2": "qt_alpha_delta",
    "diagram_delta_lambda1": "qt_alpha_delta",
}


def equivalence_status(axiom_residual: float, diagram_residual: float, tolerance: float) -> str:
    """``"agree"``, ``"disagree"`` or ``"inconclusive"`` (a residual within a decade of ``tolerance``)."""

    def side(r: float) -> bool | None:
        if r < tolerance / 10:
            return True
        if r > tolerance * 10:
            return False
        return None

    a, d = side(axiom_residual), side(diagram_residual)
    if a is None or d is None:
        return "inconclusive"
    return "agree" if a == d else "disagree"


def check_all_qt(q: QTHomBialgebra, tolerance: float | None = None) -> VerificationReport:
    """Bialgebra axioms, weak unit, QT axioms, both QHYBE forms and the four diagrams.

    alpha-invariance is a property rather than an axiom, so it goes into
    ``properties`` and does not affect ``passed``.
    """
    report = check_all_bialgebra(q.base, tolerance)
    report = report.merge(check_qt_axioms(q, tolerance))
    first, second = check_qhybe(q)
    report = report.merge(_report({"qhybe": first, "qhybe_prime": second}, q, tolerance))
    report = report.merge(check_lambda_diagrams(q, tolerance))
    report.properties["alpha_invariance"] = is_alpha_invariant(q)
    return report
