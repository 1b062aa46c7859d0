"""Truncated ``U_h(sl2)`` at the level of its modules ``V_n``.

The algebra itself is never stored.  Everything lives as operators over
the h-series ring: the generators ``H, X+, X-`` acting on ``V_n`` with basis
``v_0..v_n``, the twisting map ``alpha(v_i) = gamma^{-i} v_i``, and the
universal R acting on ``V_n (x) V_m``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .scalars import (
    DEFAULT_ORDER,
    DEFAULT_TOLERANCE,
    Scalar,
    ScalarRing,
    norm,
    q_integer,
    q_power,
    series_invert,
    series_matmul,
)
from .tensor import LinearOperator, compose, inverse, kron

GENERATORS = ("H", "X+", "X-")


def _series_ring(ring: ScalarRing | None) -> ScalarRing:
    ring = ring or ScalarRing.hseries()
    if not ring.is_series:
        raise ValueError("U_h(sl2) data needs the h-series ring")
    return ring


@dataclass(frozen=True)
class Uhsl2Model:
    """Twisting parameter ``c`` (complex), truncation order and tolerance; ``gamma = e^{2c}``."""

    c: complex = 0.0
    order: int = DEFAULT_ORDER
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        object.__setattr__(self, "c", complex(self.c))
        if self.gamma == 0:
            raise ValueError("gamma must be nonzero")

    @property
    def ring(self) -> ScalarRing:
        return ScalarRing.hseries(self.order, self.tolerance)

    @property
    def gamma(self) -> complex:
        return cmath.exp(2 * self.c)

    def action(self, n: int) -> dict[str, LinearOperator]:
        return vn_action(n, self.ring)

    def alpha(self, n: int) -> LinearOperator:
        return vn_alpha(n, self.gamma, self.ring)

    def r_operator(self, n: int, m: int) -> LinearOperator:
        return uhsl2_r_operator(n, m, self.ring)

    def generator_alpha(self) -> dict[str, complex]:
        return dict(zip(GENERATORS, uhsl2_generator_alpha_images(self.gamma)))


def vn_action(n: int, ring: ScalarRing | None = None) -> dict[str, LinearOperator]:
    """``rho(H), rho(X+), rho(X-)`` on ``V_n``, keyed ``"H"``, ``"X+"``, ``"X-"``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    ring = _series_ring(ring)
    d = n + 1
    h, xp, xm = ring.zeros((d, d)), ring.zeros((d, d)), ring.zeros((d, d))
    for i in range(d):
        h[i, i, 0] = n - 2 * i
        if i >= 1:
            xp[i - 1, i] = q_integer(n + 1 - i, ring).coeffs
        if i + 1 <= n:
            xm[i + 1, i] = q_integer(i + 1, ring).coeffs
    return {name: LinearOperator(ring, (d,), (d,), m) for name, m in zip(GENERATORS, (h, xp, xm))}


def vn_alpha(n: int, gamma: complex, ring: ScalarRing | None = None) -> LinearOperator:
    """``diag(1, gamma^-1, ..., gamma^-n)``."""
    if gamma == 0:
        raise ValueError("gamma must be nonzero")
    ring = _series_ring(ring)
    return LinearOperator.diagonal(ring, [gamma ** (-i) for i in range(n + 1)])


def uhsl2_generator_alpha_images(gamma: complex) -> tuple[complex, complex, complex]:
    """Multipliers of ``alpha`` on ``(H, X+, X-)``."""
    return (1.0, gamma, 1 / gamma)


def _r_prefactor(a: int, ring: ScalarRing) -> Scalar:
    """``(q - q^-1)^a / [a]_q! * q^{-a(a+1)/2}``, one series-invertible factor at a time."""
    qq = q_power(1, ring) - q_power(-1, ring)
    out = q_power(-a * (a + 1) / 2, ring)
    for j in range(1, a + 1):
        out = out * qq * series_invert(q_integer(j, ring))
    return out


def _ladder(op: np.ndarray, power: int, ring: ScalarRing) -> np.ndarray:
    d = op.shape[0]
    out = ring.lift(np.eye(d))
    for _ in range(power):
        out = series_matmul(op, out)
    return out


def uhsl2_r_operator(n: int, m: int, ring: ScalarRing | None = None) -> LinearOperator:
    """The universal R acting on ``V_n (x) V_m``.

    The exponential factor sits to the left of ``X+^a (x) X-^a``, so it is
    evaluated on the H-weights of the output vector.
    """
    if n < 0 or m < 0:
        raise ValueError("n, m must be >= 0")
    ring = _series_ring(ring)
    act_n, act_m = vn_action(n, ring), vn_action(m, ring)
    dn, dm = n + 1, m + 1
    total = ring.zeros((dn * dm, dn * dm))
    for a in range(min(n, m) + 1):
        xa = _ladder(act_n["X+"].matrix, a, ring)
        ya = _ladder(act_m["X-"].matrix, a, ring)
        pref = _r_prefactor(a, ring)
        lad = kron(LinearOperator(ring, (dn,), (dn,), xa), LinearOperator(ring, (dm,), (dm,), ya))
        # diagonal exponential on v_i (x) v_j: q^{(h_i h_j + a (h_i - h_j)) / 2}
        diag = []
        for i in range(dn):
            for j in range(dm):
                hi, hj = n - 2 * i, m - 2 * j
                diag.append(q_power((hi * hj + a * (hi - hj)) / 2, ring) * pref)
        term = compose(LinearOperator.diagonal(ring, diag), lad)
        total = total + term.matrix
    return LinearOperator(ring, (dn, dm), (dn, dm), total)


def intertwining_residual(model: Uhsl2Model, n: int) -> float:
    """Max over generators of ``alpha o rho(u) - rho(alpha(u)) o alpha``."""
    alpha = model.alpha(n)
    rho = model.action(n)
    worst = 0.0
    for name, mult in model.generator_alpha().items():
        lhs = compose(alpha, rho[name])
        rhs = compose(rho[name].scale(mult), alpha)
        worst = max(worst, norm(lhs.matrix - rhs.matrix))
    return worst


def r_invariance_residual(model: Uhsl2Model, n: int, m: int | None = None) -> float:
    """``(alpha (x) alpha) R (alpha (x) alpha)^{-1} - R`` on ``V_n (x) V_m``."""
    m = n if m is None else m
    aa = kron(model.alpha(n), model.alpha(m))
    r = model.r_operator(n, m)
    conj = compose(compose(aa, r), inverse(aa))
    return norm(conj.matrix - r.matrix)
