"""Hom-algebras, Hom-coalgebras and Hom-bialgebras given by structure constants.

Conventions (all arrays carry the trailing series axis):

* ``mu[i, j, k]``: ``e_i e_j = sum_k mu[i, j, k] e_k``
* ``delta[k, i, j]``: ``Delta(e_k) = sum_{i,j} delta[k, i, j] e_i (x) e_j``
* ``alpha[i, j]``: coefficient of ``e_i`` in ``alpha(e_j)`` (columns are images)

The axioms are never enforced at construction.  Each one is a checker that
returns a residual, so failing structures can be built and studied.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .scalars import ScalarRing, norm, series_einsum


class StructureError(ValueError):
    """Malformed structure data (bad shapes, empty algebra, missing fields)."""


def _frozen(arr) -> np.ndarray:
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


def _check_shape(name: str, arr: np.ndarray, shape: tuple[int, ...]) -> None:
    if arr.shape != shape:
        raise StructureError(f"{name} has shape {arr.shape[:-1]}, expected {shape[:-1]}")


@dataclass(frozen=True, eq=False)
class HomAlgebra:
    ring: ScalarRing
    mu: np.ndarray = field(repr=False)
    alpha: np.ndarray = field(repr=False)

    def __post_init__(self):
        mu = _frozen(self.mu)
        if mu.ndim != 4 or mu.shape[0] < 1:
            raise StructureError("mu must be a non-empty d x d x d tensor")
        d, K = mu.shape[0], self.ring.ncoef
        _check_shape("mu", mu, (d, d, d, K))
        alpha = _frozen(self.alpha)
        _check_shape("alpha", alpha, (d, d, K))
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "alpha", alpha)

    @property
    def dim(self) -> int:
        return self.mu.shape[0]


@dataclass(frozen=True, eq=False)
class HomCoalgebra:
    ring: ScalarRing
    delta: np.ndarray = field(repr=False)
    alpha: np.ndarray = field(repr=False)

    def __post_init__(self):
        delta = _frozen(self.delta)
        if delta.ndim != 4 or delta.shape[0] < 1:
            raise StructureError("delta must be a non-empty d x d x d tensor")
        d, K = delta.shape[0], self.ring.ncoef
        _check_shape("delta", delta, (d, d, d, K))
        alpha = _frozen(self.alpha)
        _check_shape("alpha", alpha, (d, d, K))
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "alpha", alpha)

    @property
    def dim(self) -> int:
        return self.delta.shape[0]


@dataclass(frozen=True, eq=False)
class HomBialgebra:
    ring: ScalarRing
    mu: np.ndarray = field(repr=False)
    delta: np.ndarray = field(repr=False)
    alpha: np.ndarray = field(repr=False)
    weak_unit: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "mu", _frozen(self.mu))
        object.__setattr__(self, "delta", _frozen(self.delta))
        object.__setattr__(self, "alpha", _frozen(self.alpha))
        # reuse the single-structure validation
        HomAlgebra(self.ring, self.mu, self.alpha)
        HomCoalgebra(self.ring, self.delta, self.alpha)
        if self.mu.shape != self.delta.shape:
            raise StructureError("mu and delta have different dimensions")
        if self.weak_unit is not None:
            c = _frozen(self.weak_unit)
            _check_shape("c", c, (self.dim, self.ring.ncoef))
            object.__setattr__(self, "weak_unit", c)

    @property
    def dim(self) -> int:
        return self.mu.shape[0]

    @property
    def algebra(self) -> HomAlgebra:
        return HomAlgebra(self.ring, self.mu, self.alpha)

    @property
    def coalgebra(self) -> HomCoalgebra:
        return HomCoalgebra(self.ring, self.delta, self.alpha)

    def replace(self, **changes) -> HomBialgebra:
        data = dict(ring=self.ring, mu=self.mu, delta=self.delta, alpha=self.alpha, weak_unit=self.weak_unit)
        data.update(changes)
        return HomBialgebra(**data)


@dataclass
class VerificationReport:
    """Named residuals; ``passed`` iff every residual is below ``tolerance``."""

    residuals: dict[str, float]
    tolerance: float
    # informational measurements that do not affect ``passed``
    properties: dict[str, float] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r < self.tolerance for r in self.residuals.values())

    @property
    def failing(self) -> list[str]:
        return [name for name, r in self.residuals.items() if not r < self.tolerance]

    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def merge(self, other: VerificationReport, prefix: str = "") -> VerificationReport:
        residuals = dict(self.residuals)
        residuals.update({prefix + k: v for k, v in other.residuals.items()})
        properties = dict(self.properties)
        properties.update({prefix + k: v for k, v in other.properties.items()})
        return VerificationReport(residuals, self.tolerance, properties, self.notes + other.notes)

    def to_json(self) -> dict:
        data = {"axioms": dict(self.residuals), "tolerance": self.tolerance, "pass": self.passed}
        if self.properties:
            data["properties"] = dict(self.properties)
        if self.notes:
            data["notes"] = list(self.notes)
        return data


# ---------------------------------------------------------------------------
# Algebra axioms


def check_multiplicativity(a: HomAlgebra | HomBialgebra) -> float:
    """``alpha o mu = mu o (alpha (x) alpha)``."""
    lhs = series_einsum("ijp,kp->ijk", a.mu, a.alpha)
    rhs = series_einsum("ai,bj,abk->ijk", a.alpha, a.alpha, a.mu)
    return norm(lhs - rhs)


def check_hom_associativity(a: HomAlgebra | HomBialgebra) -> float:
    """``mu o (alpha (x) mu) = mu o (mu (x) alpha)`` on all basis triples."""
    # alpha(e_i)(e_j e_l)  vs  (e_i e_j) alpha(e_l)
    lhs = series_einsum("ai,jlp,apk->ijlk", a.alpha, a.mu, a.mu)
    rhs = series_einsum("ijp,bl,pbk->ijlk", a.mu, a.alpha, a.mu)
    return norm(lhs - rhs)


def check_comultiplicativity(c: HomCoalgebra | HomBialgebra) -> float:
    """``(alpha (x) alpha) o Delta = Delta o alpha``."""
    lhs = series_einsum("kij,ai,bj->kab", c.delta, c.alpha, c.alpha)
    rhs = series_einsum("pk,pab->kab", c.alpha, c.delta)
    return norm(lhs - rhs)


def check_hom_coassociativity(c: HomCoalgebra | HomBialgebra) -> float:
    """``(alpha (x) Delta) o Delta = (Delta (x) alpha) o Delta``."""
    lhs = series_einsum("kij,ai,jbc->kabc", c.delta, c.alpha, c.delta)
    rhs = series_einsum("kij,iab,cj->kabc", c.delta, c.delta, c.alpha)
    return norm(lhs - rhs)


def check_compatibility(b: HomBialgebra) -> float:
    """``Delta(xy) = sum x1 y1 (x) x2 y2`` on all basis pairs."""
    lhs = series_einsum("ijp,pab->ijab", b.mu, b.delta)
    rhs = series_einsum("iuv,jwz,uwa,vzb->ijab", b.delta, b.delta, b.mu, b.mu)
    return norm(lhs - rhs)


def weak_unit_residuals(a: HomAlgebra | HomBialgebra, c: np.ndarray) -> tuple[float, float]:
    """Left and right residuals of ``alpha(x) = c x = x c``."""
    c = np.asarray(c, dtype=complex)
    if c.shape != (a.dim, a.ring.ncoef):
        raise StructureError(f"weak unit must have length {a.dim}")
    image = np.transpose(a.alpha, (1, 0, 2))  # [i, k]: coefficient of e_k in alpha(e_i)
    left = series_einsum("p,pik->ik", c, a.mu)
    right = series_einsum("p,ipk->ik", c, a.mu)
    return norm(image - left), norm(image - right)


def check_weak_unit(a: HomAlgebra | HomBialgebra, c: np.ndarray | None = None) -> float:
    if c is None:
        c = getattr(a, "weak_unit", None)
        if c is None:
            raise StructureError("no weak unit supplied")
    return max(weak_unit_residuals(a, c))


def check_all_bialgebra(b: HomBialgebra, tolerance: float | None = None) -> VerificationReport:
    residuals = {
        "multiplicativity": check_multiplicativity(b),
        "hom_associativity": check_hom_associativity(b),
        "comultiplicativity": check_comultiplicativity(b),
        "hom_coassociativity": check_hom_coassociativity(b),
        "compatibility": check_compatibility(b),
    }
    if b.weak_unit is not None:
        residuals["weak_unit"] = check_weak_unit(b)
    return VerificationReport(residuals, tolerance if tolerance is not None else b.ring.tolerance)


def dualize(b: HomBialgebra) -> HomBialgebra:
    """The dual Hom-bialgebra ``(A*, Delta*, mu*, alpha*)`` in the dual basis.

    The weak unit is not carried over; it is not part of the dual construction.
    """
    mu_dual = np.transpose(b.delta, (1, 2, 0, 3))  # mu*[i, j, k] = delta[k, i, j]
    delta_dual = np.transpose(b.mu, (2, 0, 1, 3))  # delta*[k, i, j] = mu[i, j, k]
    alpha_dual = np.transpose(b.alpha, (1, 0, 2))
    return HomBialgebra(b.ring, mu_dual, delta_dual, alpha_dual)


def identity_alpha(ring: ScalarRing, d: int) -> np.ndarray:
    return ring.lift(np.eye(d))


def structures_equal(a: HomBialgebra, b: HomBialgebra, atol: float = 0.0) -> bool:
    """Exact (or ``atol``-close) equality of the structure tensors."""
    pairs = [(a.mu, b.mu), (a.delta, b.delta), (a.alpha, b.alpha)]
    if (a.weak_unit is None) != (b.weak_unit is None):
        return False
    if a.weak_unit is not None:
        pairs.append((a.weak_unit, b.weak_unit))
    for x, y in pairs:
        if x.shape != y.shape:
            return False
        if atol == 0.0:
            if not np.array_equal(x, y):
                return False
        elif norm(x - y) > atol:
            return False
    return True
