"""Finite abelian groups, group and function bialgebras, and the anyonic R-matrices."""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .homstruct import HomBialgebra
from .quasitri import QTHomBialgebra
from .scalars import ScalarRing
from .twisting import HypothesisError, qt_yau_twist, qt_yau_twist_powered

# the U_h(sl2) data is part of the catalog; it lives in its own module
from .uhsl2 import (  # noqa: F401
    Uhsl2Model,
    uhsl2_generator_alpha_images,
    uhsl2_r_operator,
    vn_action,
    vn_alpha,
)

Element = tuple[int, ...]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """``Z/n1 x ... x Z/nr``; elements are tuples, enumerated lexicographically."""

    orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        if not orders or any(n < 1 for n in orders):
            raise ValueError("cyclic orders must be positive integers")
        object.__setattr__(self, "orders", orders)

    @classmethod
    def cyclic(cls, n: int) -> FiniteAbelianGroup:
        return cls((n,))

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    @cached_property
    def elements(self) -> list[Element]:
        return list(itertools.product(*(range(n) for n in self.orders)))

    def index(self, u: Element) -> int:
        return int(np.ravel_multi_index(tuple(u), self.orders))

    @property
    def identity(self) -> Element:
        return (0,) * len(self.orders)

    def mul(self, u: Element, v: Element) -> Element:
        return tuple((a + b) % n for a, b, n in zip(u, v, self.orders))

    def inverse(self, u: Element) -> Element:
        return tuple((-a) % n for a, n in zip(u, self.orders))


@dataclass(frozen=True)
class GroupMorphism:
    """Endomorphism given by the images of the cyclic generators."""

    group: FiniteAbelianGroup
    images: tuple[Element, ...]

    def __post_init__(self):
        g = self.group
        images = tuple(tuple(int(a) % n for a, n in zip(img, g.orders)) for img in self.images)
        if len(images) != len(g.orders) or any(len(img) != len(g.orders) for img in self.images):
            raise ValueError("need one image tuple per cyclic factor")
        for n_i, img in zip(g.orders, images):
            if any((n_i * a) % n for a, n in zip(img, g.orders)):
                raise ValueError(f"image {img} of a generator of order {n_i} does not respect that order")
        object.__setattr__(self, "images", images)

    def __call__(self, u: Element) -> Element:
        out = [0] * len(self.group.orders)
        for a, img in zip(u, self.images):
            for j, n in enumerate(self.group.orders):
                out[j] = (out[j] + a * img[j]) % n
        return tuple(out)

    @property
    def is_surjective(self) -> bool:
        return len({self(u) for u in self.group.elements}) == self.group.order

    def algebra_matrix(self, ring: ScalarRing) -> np.ndarray:
        """The induced map on ``kG``: ``u -> alpha(u)``."""
        g = self.group
        m = np.zeros((g.order, g.order))
        for u in g.elements:
            m[g.index(self(u)), g.index(u)] = 1
        return ring.lift(m)

    def function_matrix(self, ring: ScalarRing) -> np.ndarray:
        """The induced map on ``k(G)``: ``phi -> phi o alpha``, so ``delta_u -> sum_{alpha(v)=u} delta_v``."""
        g = self.group
        m = np.zeros((g.order, g.order))
        for v in g.elements:
            m[g.index(v), g.index(self(v))] = 1
        return ring.lift(m)


def cyclic_power_endo(n: int, k: int) -> GroupMorphism:
    """``g -> g^k`` on ``Z/n``; surjective iff ``gcd(k, n) = 1``."""
    return GroupMorphism(FiniteAbelianGroup.cyclic(n), ((k % n,),))


def group_bialgebra(g: FiniteAbelianGroup, ring: ScalarRing | None = None) -> HomBialgebra:
    """``kG`` with ``Delta(u) = u (x) u``; the unit ``e`` is recorded as the weak unit."""
    ring = ring or ScalarRing.complex()
    d = g.order
    mu = np.zeros((d, d, d))
    delta = np.zeros((d, d, d))
    for u in g.elements:
        i = g.index(u)
        delta[i, i, i] = 1
        for v in g.elements:
            mu[i, g.index(v), g.index(g.mul(u, v))] = 1
    unit = np.zeros(d)
    unit[g.index(g.identity)] = 1
    return HomBialgebra(ring, ring.lift(mu), ring.lift(delta), ring.lift(np.eye(d)), ring.lift(unit))


def function_bialgebra(g: FiniteAbelianGroup, ring: ScalarRing | None = None) -> HomBialgebra:
    """``k(G)`` in the basis of point masses; pointwise product, ``Delta`` dual to the group law."""
    ring = ring or ScalarRing.complex()
    d = g.order
    mu = np.zeros((d, d, d))
    delta = np.zeros((d, d, d))
    for u in g.elements:
        i = g.index(u)
        mu[i, i, i] = 1
        for v in g.elements:
            delta[g.index(g.mul(u, v)), i, g.index(v)] = 1
    return HomBialgebra(ring, ring.lift(mu), ring.lift(delta), ring.lift(np.eye(d)), ring.lift(np.ones(d)))


def _table(g: FiniteAbelianGroup, table) -> np.ndarray:
    """Accept a complex ``(|G|, |G|)`` table or a ring array with a trailing series axis."""
    table = np.asarray(table, dtype=complex)
    if table.ndim == 3:
        table = table[..., 0] if table.shape[-1] == 1 else table
    if table.shape[:2] != (g.order, g.order):
        raise ValueError(f"R table must be {g.order} x {g.order}")
    return table


def check_group_r(g: FiniteAbelianGroup, table) -> tuple[float, float]:
    """Residuals of the two conditions making ``sum R(u, v) u (x) v`` quasi-triangular on ``kG``.

    ``sum_{xy=v} R(u,x) R(w,y) = delta_{u,w} R(u,v)`` and
    ``sum_{xy=u} R(x,v) R(y,w) = delta_{v,w} R(u,v)``.
    """
    r = _table(g, table)
    els, idx = g.elements, g.index
    first = second = 0.0
    for u, v, w in itertools.product(els, repeat=3):
        s1 = sum(r[idx(u), idx(x)] * r[idx(w), idx(g.mul(g.inverse(x), v))] for x in els)
        s2 = sum(r[idx(x), idx(v)] * r[idx(g.mul(g.inverse(x), u)), idx(w)] for x in els)
        target1 = r[idx(u), idx(v)] if u == w else 0
        target2 = r[idx(u), idx(v)] if v == w else 0
        first = max(first, abs(s1 - target1))
        second = max(second, abs(s2 - target2))
    return first, second


def bicharacter_residuals(g: FiniteAbelianGroup, chi) -> tuple[float, float]:
    """``R(uv, w) = R(u, w) R(v, w)`` and ``R(u, vw) = R(u, w) R(u, v)``."""
    r = _table(g, chi)
    idx = g.index
    first = second = 0.0
    for u, v, w in itertools.product(g.elements, repeat=3):
        first = max(first, abs(r[idx(g.mul(u, v)), idx(w)] - r[idx(u), idx(w)] * r[idx(v), idx(w)]))
        second = max(second, abs(r[idx(u), idx(g.mul(v, w))] - r[idx(u), idx(w)] * r[idx(u), idx(v)]))
    return first, second


def exp_bicharacter(g: FiniteAbelianGroup) -> np.ndarray:
    """``chi(u, v) = exp(2 pi i sum_j u_j v_j / n_j)``."""
    d = g.order
    chi = np.zeros((d, d), dtype=complex)
    for u in g.elements:
        for v in g.elements:
            phase = sum(a * b / n for a, b, n in zip(u, v, g.orders))
            chi[g.index(u), g.index(v)] = cmath.exp(2j * math.pi * phase)
    return chi


def bicharacter_r(g: FiniteAbelianGroup, chi, ring: ScalarRing | None = None) -> np.ndarray:
    """R matrix on ``k(G)`` from a bicharacter table; rejects non-bicharacters."""
    ring = ring or ScalarRing.complex()
    first, second = bicharacter_residuals(g, chi)
    if not max(first, second) < ring.tolerance:
        raise HypothesisError(f"not a bicharacter (residuals {first:.3e}, {second:.3e})")
    return ring.lift(_table(g, chi))


def anyonic_r(n: int, ring: ScalarRing | None = None) -> np.ndarray:
    """``R = (1/n) sum_{p,q} exp(-2 pi i p q / n) g^p (x) g^q``."""
    ring = ring or ScalarRing.complex()
    r = np.zeros((n, n), dtype=complex)
    for p in range(n):
        for q in range(n):
            r[p, q] = cmath.exp(-2j * math.pi * ((p * q) % n) / n) / n
    return ring.lift(r)


def anyonic_qt(n: int, ring: ScalarRing | None = None) -> tuple[HomBialgebra, np.ndarray]:
    """The anyon-generating quantum group on ``C[Z/n]`` (classical data)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ring = ring or ScalarRing.complex()
    return group_bialgebra(FiniteAbelianGroup.cyclic(n), ring), anyonic_r(n, ring)


def anyonic_hom(
    n: int, k: int = 1, t: int = 0, ring: ScalarRing | None = None, *, verify: bool = True
) -> QTHomBialgebra:
    """Twist of the anyonic quantum group along ``g -> g^k``, then ``R`` twisted ``t`` times."""
    ring = ring or ScalarRing.complex()
    b, r = anyonic_qt(n, ring)
    endo = cyclic_power_endo(n, k)
    alpha = endo.algebra_matrix(ring)
    if t == 0:
        return qt_yau_twist(b, r, alpha, verify=verify)
    if not endo.is_surjective:
        raise HypothesisError(f"alpha not surjective: gcd({k}, {n}) != 1, so R cannot be twisted")
    return qt_yau_twist_powered(b, r, alpha, t, verify=verify)


def pointwise(g: FiniteAbelianGroup, fn: Callable[[Element, Element], complex]) -> np.ndarray:
    """Tabulate a function on ``G x G`` in the canonical element order."""
    return np.array([[fn(u, v) for v in g.elements] for u in g.elements], dtype=complex)


def parse_orders(text: str | Sequence[int]) -> FiniteAbelianGroup:
    if isinstance(text, str):
        orders = [int(part) for part in text.split(",") if part.strip()]
    else:
        orders = list(text)
    return FiniteAbelianGroup(tuple(orders))

