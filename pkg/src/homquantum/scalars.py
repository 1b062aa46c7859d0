"""Scalar rings: approximate complex numbers and truncated power series in h.

Every coefficient array in the package carries a trailing *series axis*.
For the complex ring that axis has length 1; for the h-series ring of
order ``N`` it has length ``N + 1`` and slot ``k`` holds the coefficient of
``h**k``.  With this layout one truncated-convolution routine
(:func:`series_einsum`) serves both rings.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

DEFAULT_TOLERANCE = 1e-9
DEFAULT_ORDER = 8


class RingMismatchError(ValueError):
    """Raised when values from different scalar rings are combined."""


class NotInvertibleError(ArithmeticError):
    """Raised when a series has a (numerically) vanishing constant term."""


@dataclass(frozen=True)
class ScalarRing:
    kind: Literal["complex", "hseries"] = "complex"
    tolerance: float = DEFAULT_TOLERANCE
    order: int = DEFAULT_ORDER

    def __post_init__(self):
        if self.kind not in ("complex", "hseries"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.kind == "hseries" and self.order < 1:
            raise ValueError("series order must be >= 1")

    @classmethod
    def complex(cls, tolerance: float = DEFAULT_TOLERANCE) -> ScalarRing:
        return cls("complex", tolerance, DEFAULT_ORDER)

    @classmethod
    def hseries(cls, order: int = DEFAULT_ORDER, tolerance: float = DEFAULT_TOLERANCE) -> ScalarRing:
        return cls("hseries", tolerance, order)

    @property
    def is_series(self) -> bool:
        return self.kind == "hseries"

    @property
    def ncoef(self) -> int:
        """Length of the trailing series axis."""
        return self.order + 1 if self.is_series else 1

    def same_shape_as(self, other: ScalarRing) -> bool:
        return self.kind == other.kind and self.ncoef == other.ncoef

    # --- constructors -------------------------------------------------
    def zeros(self, shape=()) -> np.ndarray:
        return np.zeros(tuple(shape) + (self.ncoef,), dtype=complex)

    def lift(self, values) -> np.ndarray:
        """Embed an array of complex constants as constant series."""
        values = np.asarray(values, dtype=complex)
        out = self.zeros(values.shape)
        out[..., 0] = values
        return out

    def scalar(self, value: complex | Scalar = 0) -> Scalar:
        if isinstance(value, Scalar):
            _require_same(self, value.ring)
            return value
        return Scalar(self, self.lift(value))

    def one(self) -> Scalar:
        return self.scalar(1)

    def zero(self) -> Scalar:
        return self.scalar(0)

    def h(self) -> Scalar:
        if not self.is_series:
            raise RingMismatchError("h only exists in the h-series ring")
        c = self.zeros()
        c[1] = 1
        return Scalar(self, c)

    def series(self, coefficients) -> Scalar:
        """Series from a coefficient list (missing high-order terms are zero)."""
        coefficients = np.asarray(coefficients, dtype=complex)
        if coefficients.ndim != 1 or len(coefficients) > self.ncoef:
            raise ValueError(f"expected at most {self.ncoef} coefficients")
        c = self.zeros()
        c[: len(coefficients)] = coefficients
        return Scalar(self, c)


def _require_same(a: ScalarRing, b: ScalarRing) -> None:
    if not a.same_shape_as(b):
        raise RingMismatchError(f"ring mismatch: {a} vs {b}")


# ---------------------------------------------------------------------------
# Truncated products on coefficient arrays


def _nonzero_slots(arr: np.ndarray) -> list[int]:
    flat = arr.reshape(-1, arr.shape[-1])
    return [k for k in range(arr.shape[-1]) if np.any(flat[:, k])]


def series_einsum(subscripts: str, *operands: np.ndarray) -> np.ndarray:
    """``np.einsum`` over the leading axes, truncated convolution over the series axis.

    ``subscripts`` describes the operands without their trailing series axis;
    all operands must share the same series length.
    """
    if not operands:
        raise ValueError("need at least one operand")
    ncoef = operands[0].shape[-1]
    if any(op.shape[-1] != ncoef for op in operands):
        raise RingMismatchError("operands have different series lengths")
    slots = [_nonzero_slots(op) for op in operands]
    out = None
    for ks in itertools.product(*slots):
        total = sum(ks)
        if total >= ncoef:
            continue
        term = np.einsum(subscripts, *(op[..., k] for op, k in zip(operands, ks)), optimize=len(operands) > 2)
        if out is None:
            out = np.zeros(np.shape(term) + (ncoef,), dtype=complex)
        out[..., total] += term
    if out is None:
        # every product vanished; recover the output shape from a zero evaluation
        shape = np.shape(np.einsum(subscripts, *(op[..., 0] for op in operands)))
        out = np.zeros(shape + (ncoef,), dtype=complex)
    return out


def series_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product of two ``(p, q, K)`` and ``(q, r, K)`` coefficient arrays."""
    return series_einsum("ij,jk->ik", a, b)


def series_scale(a: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Multiply every entry of ``a`` by the single series ``s`` (shape ``(K,)``)."""
    return series_einsum("...,->...", a, s)


def norm(arr: np.ndarray) -> float:
    """Largest coefficient modulus in ``arr`` (0 for empty arrays)."""
    arr = np.asarray(arr)
    return float(np.max(np.abs(arr))) if arr.size else 0.0


# ---------------------------------------------------------------------------
# Scalar values


@dataclass(frozen=True, eq=False)
class Scalar:
    """An immutable element of a :class:`ScalarRing`."""

    ring: ScalarRing
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        if c.shape != (self.ring.ncoef,):
            raise ValueError(f"expected {self.ring.ncoef} coefficients, got {c.shape[0]}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def _coerce(self, other) -> Scalar:
        if isinstance(other, Scalar):
            _require_same(self.ring, other.ring)
            return other
        if isinstance(other, (int, float, complex)):
            return self.ring.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.ring, self.coeffs + other.coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.ring, self.coeffs - other.coeffs)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Scalar(self.ring, -self.coeffs)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.ring, series_einsum(",->", self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * series_invert(other)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return series_invert(self) ** (-n)
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).is_zero()

    __hash__ = None

    def is_zero(self) -> bool:
        return bool(np.all(np.abs(self.coeffs) < self.ring.tolerance))

    @property
    def constant(self) -> complex:
        return complex(self.coeffs[0])

    def to_json(self):
        return scalar_to_json(self.coeffs, self.ring)

    def __repr__(self):
        if not self.ring.is_series:
            return f"Scalar({self.constant})"
        terms = " + ".join(f"({c:.6g})h^{k}" for k, c in enumerate(self.coeffs) if c != 0)
        return f"Scalar({terms or '0'})"


# ---------------------------------------------------------------------------
# Series functions


def _require_series(x: Scalar, what: str) -> None:
    if not x.ring.is_series:
        raise RingMismatchError(f"{what} needs the h-series ring")


def series_exp(x: Scalar) -> Scalar:
    """exp of a truncated series: ``e^{c0} * sum_k (x - c0)^k / k!``."""
    _require_series(x, "series_exp")
    ring = x.ring
    c0 = x.constant
    nil = x - c0  # nilpotent part, vanishes to order > ring.order
    term = ring.one()
    total = ring.one()
    for k in range(1, ring.order + 1):
        term = term * nil * (1.0 / k)
        total = total + term
    return total * cmath.exp(c0)


def series_invert(x: Scalar) -> Scalar:
    """Multiplicative inverse modulo ``h**(order+1)``."""
    ring = x.ring
    c0 = x.constant
    if abs(c0) <= ring.tolerance:
        raise NotInvertibleError(f"constant term {c0} is not invertible")
    if not ring.is_series:
        return Scalar(ring, [1 / c0])
    a = x.coeffs
    b = np.zeros_like(a)
    b[0] = 1 / c0
    for k in range(1, ring.ncoef):
        b[k] = -np.dot(a[1 : k + 1], b[k - 1 :: -1][:k]) / c0
    return Scalar(ring, b)


def q_power(exponent: float, ring: ScalarRing) -> Scalar:
    """``q**exponent = exp(exponent * h / 2)``; fractional exponents allowed."""
    _require_series(ring.one(), "q_power")
    return series_exp(ring.h() * (exponent / 2))


def q_integer(m: int, ring: ScalarRing) -> Scalar:
    """``[m]_q`` via the division-free sum ``sum_j q^{m-1-2j}``."""
    if m < 0:
        raise ValueError("q_integer needs m >= 0")
    total = ring.zero()
    for j in range(m):
        total = total + q_power(m - 1 - 2 * j, ring)
    return total


def q_factorial(m: int, ring: ScalarRing) -> Scalar:
    if m < 0:
        raise ValueError("q_factorial needs m >= 0")
    total = ring.one()
    for j in range(1, m + 1):
        total = total * q_integer(j, ring)
    return total


def q_binomial(m: int, r: int, ring: ScalarRing) -> Scalar:
    if not 0 <= r <= m:
        raise ValueError(f"q_binomial needs 0 <= r <= m, got m={m}, r={r}")
    denominator = q_factorial(r, ring) * q_factorial(m - r, ring)
    return q_factorial(m, ring) * series_invert(denominator)


def root_of_unity(n: int, p: int, ring: ScalarRing) -> Scalar:
    """``exp(2*pi*i*p/n)`` in the complex ring."""
    if ring.is_series:
        raise RingMismatchError("roots of unity live in the complex ring")
    if n < 1:
        raise ValueError("n must be positive")
    p %= n
    # quarter turns are returned exactly
    if (4 * p) % n == 0:
        return ring.scalar((1, 1j, -1, -1j)[4 * p // n])
    return ring.scalar(cmath.exp(2j * math.pi * p / n))


# ---------------------------------------------------------------------------
# Serialization: complex -> [re, im]; series -> [[re, im], ...]


def _pair(z: complex) -> list[float]:
    # adding 0.0 folds -0.0 into 0.0 so equal values serialize identically
    return [float(z.real) + 0.0, float(z.imag) + 0.0]


def scalar_to_json(coeffs: np.ndarray, ring: ScalarRing):
    coeffs = np.asarray(coeffs).reshape(-1)
    if ring.is_series:
        return [_pair(z) for z in coeffs]
    return _pair(coeffs[0])


def _parse_pair(obj) -> complex:
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return complex(obj)
    if isinstance(obj, list) and len(obj) == 2 and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
        return complex(obj[0], obj[1])
    raise ValueError(f"expected a [re, im] pair, got {obj!r}")


def scalar_from_json(obj, ring: ScalarRing) -> np.ndarray:
    """Parse one serialized scalar into a ``(K,)`` coefficient array."""
    out = ring.zeros()
    if ring.is_series:
        if not isinstance(obj, list) or len(obj) != ring.ncoef:
            raise ValueError(f"expected a list of {ring.ncoef} [re, im] coefficients")
        for k, pair in enumerate(obj):
            out[k] = _parse_pair(pair)
    else:
        out[0] = _parse_pair(obj)
    return out


def array_to_json(arr: np.ndarray, ring: ScalarRing):
    """Nested lists of serialized scalars; ``arr`` has a trailing series axis."""
    if arr.ndim == 1:
        return scalar_to_json(arr, ring)
    return [array_to_json(sub, ring) for sub in arr]


def array_from_json(obj, shape: tuple[int, ...], ring: ScalarRing, name: str = "array") -> np.ndarray:
    out = ring.zeros(shape)
    _fill(out, obj, shape, ring, name)
    return out


def _fill(out, obj, shape, ring, path):
    if not shape:
        try:
            out[...] = scalar_from_json(obj, ring)
        except ValueError as exc:
            raise ValueError(f"{path}: {exc}") from None
        return
    if not isinstance(obj, list) or len(obj) != shape[0]:
        raise ValueError(f"{path}: expected a list of length {shape[0]}")
    for i, sub in enumerate(obj):
        _fill(out[i], sub, shape[1:], ring, f"{path}[{i}]")


def ring_to_json(ring: ScalarRing) -> dict:
    data = {"kind": ring.kind, "tolerance": ring.tolerance}
    if ring.is_series:
        data["order"] = ring.order
    return data


def ring_from_json(obj) -> ScalarRing:
    if obj is None:
        return ScalarRing.complex()
    if not isinstance(obj, dict):
        raise ValueError("ring: expected an object")
    kind = obj.get("kind", "complex")
    tolerance = float(obj.get("tolerance", DEFAULT_TOLERANCE))
    order = int(obj.get("order", DEFAULT_ORDER))
    return ScalarRing(kind, tolerance, order)
