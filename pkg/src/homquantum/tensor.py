"""Dense multilinear algebra over a :class:`~homquantum.scalars.ScalarRing`.

Index convention, used everywhere in the package: a basis tensor
``e_{i1} (x) ... (x) e_{ik}`` has flat index ``ravel_multi_index((i1..ik), dims)``
(leftmost leg slowest), and column ``j`` of an operator matrix is the image
of the ``j``-th input basis tensor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .scalars import (
    RingMismatchError,
    Scalar,
    ScalarRing,
    array_from_json,
    array_to_json,
    norm,
    ring_from_json,
    ring_to_json,
    series_einsum,
    series_matmul,
)


class ShapeError(ValueError):
    pass


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TensorElement:
    ring: ScalarRing
    leg_dims: tuple[int, ...]
    coeffs: np.ndarray = field(repr=False)  # shape leg_dims + (K,)

    def __post_init__(self):
        object.__setattr__(self, "leg_dims", tuple(int(d) for d in self.leg_dims))
        if any(d < 1 for d in self.leg_dims):
            raise ShapeError("leg dimensions must be positive")
        c = np.asarray(self.coeffs, dtype=complex)
        expected = self.leg_dims + (self.ring.ncoef,)
        if c.shape != expected:
            if c.size != math.prod(expected):
                raise ShapeError(f"coefficient array of shape {c.shape} does not fit legs {self.leg_dims}")
            c = c.reshape(expected)
        object.__setattr__(self, "coeffs", _frozen(c))

    @property
    def size(self) -> int:
        return math.prod(self.leg_dims)

    @property
    def flat(self) -> np.ndarray:
        """Coefficients as a ``(size, K)`` array in the global index order."""
        return self.coeffs.reshape(self.size, self.ring.ncoef)

    @classmethod
    def basis(cls, ring: ScalarRing, leg_dims: Sequence[int], index: Sequence[int]) -> TensorElement:
        c = ring.zeros(tuple(leg_dims))
        c[tuple(index)][0] = 1
        return cls(ring, tuple(leg_dims), c)

    @classmethod
    def zeros(cls, ring: ScalarRing, leg_dims: Sequence[int]) -> TensorElement:
        return cls(ring, tuple(leg_dims), ring.zeros(tuple(leg_dims)))

    def _check(self, other: TensorElement) -> None:
        if not self.ring.same_shape_as(other.ring):
            raise RingMismatchError("tensor elements live in different rings")
        if self.leg_dims != other.leg_dims:
            raise ShapeError(f"leg mismatch {self.leg_dims} vs {other.leg_dims}")

    def __add__(self, other: TensorElement) -> TensorElement:
        self._check(other)
        return TensorElement(self.ring, self.leg_dims, self.coeffs + other.coeffs)

    def __sub__(self, other: TensorElement) -> TensorElement:
        self._check(other)
        return TensorElement(self.ring, self.leg_dims, self.coeffs - other.coeffs)

    def __neg__(self) -> TensorElement:
        return TensorElement(self.ring, self.leg_dims, -self.coeffs)

    def scale(self, s: Scalar) -> TensorElement:
        return TensorElement(self.ring, self.leg_dims, series_einsum("...,->...", self.coeffs, s.coeffs))

    def tensor(self, other: TensorElement) -> TensorElement:
        """Outer product ``self (x) other``; legs concatenate."""
        if not self.ring.same_shape_as(other.ring):
            raise RingMismatchError("tensor elements live in different rings")
        a = self.coeffs.reshape(self.size, -1)
        b = other.coeffs.reshape(other.size, -1)
        out = series_einsum("i,j->ij", a, b)
        return TensorElement(self.ring, self.leg_dims + other.leg_dims, out)

    def entry(self, *index: int) -> Scalar:
        return Scalar(self.ring, self.coeffs[index])


@dataclass(frozen=True, eq=False)
class LinearOperator:
    ring: ScalarRing
    in_dims: tuple[int, ...]
    out_dims: tuple[int, ...]
    matrix: np.ndarray = field(repr=False)  # shape (prod out, prod in, K)

    def __post_init__(self):
        object.__setattr__(self, "in_dims", tuple(int(d) for d in self.in_dims))
        object.__setattr__(self, "out_dims", tuple(int(d) for d in self.out_dims))
        m = np.asarray(self.matrix, dtype=complex)
        expected = (math.prod(self.out_dims), math.prod(self.in_dims), self.ring.ncoef)
        if m.shape != expected:
            raise ShapeError(f"matrix shape {m.shape} does not match {expected}")
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape[:2]

    @classmethod
    def identity(cls, ring: ScalarRing, dims: Sequence[int]) -> LinearOperator:
        dims = tuple(dims)
        return cls(ring, dims, dims, ring.lift(np.eye(math.prod(dims))))

    @classmethod
    def from_complex(cls, ring: ScalarRing, matrix, in_dims=None, out_dims=None) -> LinearOperator:
        """Operator with constant entries from a plain complex matrix."""
        matrix = np.asarray(matrix, dtype=complex)
        in_dims = tuple(in_dims) if in_dims is not None else (matrix.shape[1],)
        out_dims = tuple(out_dims) if out_dims is not None else (matrix.shape[0],)
        return cls(ring, in_dims, out_dims, ring.lift(matrix))

    @classmethod
    def diagonal(cls, ring: ScalarRing, entries: Sequence[Scalar | complex]) -> LinearOperator:
        d = len(entries)
        m = ring.zeros((d, d))
        for i, s in enumerate(entries):
            m[i, i] = ring.scalar(s).coeffs
        return cls(ring, (d,), (d,), m)

    def _check(self, other: LinearOperator) -> None:
        if not self.ring.same_shape_as(other.ring):
            raise RingMismatchError("operators live in different rings")
        if self.in_dims != other.in_dims or self.out_dims != other.out_dims:
            raise ShapeError("operator shapes differ")

    def __add__(self, other: LinearOperator) -> LinearOperator:
        self._check(other)
        return LinearOperator(self.ring, self.in_dims, self.out_dims, self.matrix + other.matrix)

    def __sub__(self, other: LinearOperator) -> LinearOperator:
        self._check(other)
        return LinearOperator(self.ring, self.in_dims, self.out_dims, self.matrix - other.matrix)

    def __neg__(self) -> LinearOperator:
        return LinearOperator(self.ring, self.in_dims, self.out_dims, -self.matrix)

    def __matmul__(self, other: LinearOperator) -> LinearOperator:
        return compose(self, other)

    def scale(self, s: Scalar | complex) -> LinearOperator:
        s = self.ring.scalar(s)
        return LinearOperator(self.ring, self.in_dims, self.out_dims, series_einsum("...,->...", self.matrix, s.coeffs))

    def entry(self, row: int, col: int) -> Scalar:
        return Scalar(self.ring, self.matrix[row, col])

    def constant_part(self) -> np.ndarray:
        return np.array(self.matrix[..., 0])


def kron(a: LinearOperator, b: LinearOperator) -> LinearOperator:
    if not a.ring.same_shape_as(b.ring):
        raise RingMismatchError("operators live in different rings")
    (p, q), (r, s) = a.shape, b.shape
    m = series_einsum("ij,kl->ikjl", a.matrix, b.matrix).reshape(p * r, q * s, -1)
    return LinearOperator(a.ring, a.in_dims + b.in_dims, a.out_dims + b.out_dims, m)


def kron_all(ops: Sequence[LinearOperator]) -> LinearOperator:
    result = ops[0]
    for op in ops[1:]:
        result = kron(result, op)
    return result


def compose(a: LinearOperator, b: LinearOperator) -> LinearOperator:
    """``a o b`` (apply ``b`` first)."""
    if not a.ring.same_shape_as(b.ring):
        raise RingMismatchError("operators live in different rings")
    if math.prod(a.in_dims) != math.prod(b.out_dims):
        raise ShapeError(f"cannot compose: {a.in_dims} after {b.out_dims}")
    return LinearOperator(a.ring, b.in_dims, a.out_dims, series_matmul(a.matrix, b.matrix))


def compose_all(*ops: LinearOperator) -> LinearOperator:
    """``ops[0] o ops[1] o ...`` (the last one acts first)."""
    result = ops[-1]
    for op in reversed(ops[:-1]):
        result = compose(op, result)
    return result


def apply(a: LinearOperator, x: TensorElement) -> TensorElement:
    if not a.ring.same_shape_as(x.ring):
        raise RingMismatchError("operator and element live in different rings")
    if math.prod(a.in_dims) != x.size:
        raise ShapeError(f"operator expects {a.in_dims}, element has {x.leg_dims}")
    out = series_einsum("ij,j->i", a.matrix, x.flat)
    return TensorElement(a.ring, a.out_dims, out)


def inverse(a: LinearOperator) -> LinearOperator:
    """Inverse of a square operator; series entries use ``B_k = -B_0 sum_j A_j B_{k-j}``."""
    if a.shape[0] != a.shape[1]:
        raise ShapeError("only square operators can be inverted")
    a0 = a.matrix[..., 0]
    if np.linalg.matrix_rank(a0) < a0.shape[0]:
        raise np.linalg.LinAlgError("operator is singular")
    b = np.zeros_like(a.matrix)
    b0 = np.linalg.inv(a0)
    b[..., 0] = b0
    for k in range(1, a.ring.ncoef):
        acc = sum(a.matrix[..., j] @ b[..., k - j] for j in range(1, k + 1))
        b[..., k] = -b0 @ acc
    return LinearOperator(a.ring, a.out_dims, a.in_dims, b)


def twist_operator(ring: ScalarRing, d1: int, d2: int) -> LinearOperator:
    """``tau: V (x) W -> W (x) V``, ``v (x) w -> w (x) v``."""
    m = np.zeros((d2 * d1, d1 * d2))
    for i in range(d1):
        for j in range(d2):
            m[j * d1 + i, i * d2 + j] = 1
    return LinearOperator(ring, (d1, d2), (d2, d1), ring.lift(m))


def leg_permute(x: TensorElement, perm: Sequence[int]) -> TensorElement:
    """Reorder legs: output leg ``k`` is input leg ``perm[k]``."""
    perm = tuple(perm)
    if sorted(perm) != list(range(len(x.leg_dims))):
        raise ShapeError(f"{perm} is not a permutation of {len(x.leg_dims)} legs")
    coeffs = np.transpose(x.coeffs, perm + (len(perm),))
    return TensorElement(x.ring, tuple(x.leg_dims[p] for p in perm), coeffs)


def embed_r(r: TensorElement, c: TensorElement, which: str) -> TensorElement:
    """Leg embeddings ``R12 = R (x) c``, ``R23 = c (x) R``, ``R13 = (tau (x) Id)(R23)``."""
    if len(r.leg_dims) != 2 or len(c.leg_dims) != 1:
        raise ShapeError("embed_r needs a 2-leg R and a 1-leg c")
    if r.leg_dims != (c.leg_dims[0],) * 2:
        raise ShapeError("R legs must match the dimension of c")
    if which == "12":
        return r.tensor(c)
    r23 = c.tensor(r)
    if which == "23":
        return r23
    if which == "13":
        return leg_permute(r23, (1, 0, 2))
    raise ValueError(f"unknown leg embedding {which!r}")


_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def legwise_multiply(x: TensorElement, y: TensorElement, mu: np.ndarray) -> TensorElement:
    """``(a1 (x) .. (x) ak)(b1 (x) .. (x) bk) = a1 b1 (x) .. (x) ak bk``, extended bilinearly.

    ``mu`` is the ``(d, d, d, K)`` structure tensor with ``e_i e_j = sum_k mu[i,j,k] e_k``.
    """
    x._check(y)
    d = mu.shape[0]
    k = len(x.leg_dims)
    if any(dim != d for dim in x.leg_dims):
        raise ShapeError("every leg must have the algebra's dimension")
    if k > 6:
        raise ShapeError("legwise_multiply supports at most 6 legs")
    xs, ys = _LETTERS[:k], _LETTERS[k : 2 * k]
    out = series_einsum(f"{xs},{ys}->{xs}{ys}", x.coeffs, y.coeffs)
    # contract one leg pair per step; the product leg is appended at the end
    for leg in range(k):
        rest = _LETTERS[: 2 * (k - leg) + leg]
        a, b = rest[0], rest[k - leg]
        kept = rest.replace(a, "").replace(b, "")
        out = series_einsum(f"{rest},{a}{b}z->{kept}z", out, mu)
    return TensorElement(x.ring, x.leg_dims, out)


def residual_norm(x: TensorElement | LinearOperator | np.ndarray) -> float:
    """Largest coefficient modulus over all entries."""
    if isinstance(x, TensorElement):
        return norm(x.coeffs)
    if isinstance(x, LinearOperator):
        return norm(x.matrix)
    return norm(x)


def operator_to_json(op: LinearOperator) -> dict:
    return {
        "ring": ring_to_json(op.ring),
        "in_dims": list(op.in_dims),
        "out_dims": list(op.out_dims),
        "matrix": array_to_json(op.matrix, op.ring),
    }


def operator_from_json(obj: dict) -> LinearOperator:
    ring = ring_from_json(obj.get("ring"))
    in_dims = tuple(obj["in_dims"])
    out_dims = tuple(obj["out_dims"])
    shape = (math.prod(out_dims), math.prod(in_dims))
    return LinearOperator(ring, in_dims, out_dims, array_from_json(obj["matrix"], shape, ring, "matrix"))
