"""Hom-modules, the operator ``B = tau o R`` and the Hom-Yang-Baxter equation.

A :class:`HomModule` carries its action in one of two forms:

* ``action[a, x, y]``: the Hom-action of a finite-dimensional Hom-algebra,
  ``e_a . m_x = sum_y action[a, x, y] m_y``;
* ``generators``: classical operators ``rho(u)`` for named generators, with
  scalar multipliers ``alpha_A(u) = s_u u``.  The Hom-action is
  ``alpha_M o rho``.  This is how the U_h(sl2) modules are represented.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .homstruct import HomAlgebra, HomBialgebra, StructureError, VerificationReport
from .quasitri import QTHomBialgebra, is_alpha_invariant
from .scalars import DEFAULT_ORDER, ScalarRing, norm, series_einsum
from .tensor import LinearOperator, compose, compose_all, kron, kron_all, twist_operator
from .twisting import HypothesisError
from .uhsl2 import Uhsl2Model, intertwining_residual, r_invariance_residual

MAX_BRAID_DIM = 65536


@dataclass(frozen=True, eq=False)
class HomModule:
    ring: ScalarRing
    alpha: np.ndarray = field(repr=False)
    action: np.ndarray | None = field(default=None, repr=False)
    generators: dict[str, np.ndarray] | None = field(default=None, repr=False)
    generator_alpha: dict[str, complex] | None = None

    def __post_init__(self):
        alpha = np.array(self.alpha, dtype=complex)
        if alpha.ndim != 3 or alpha.shape[0] < 1 or alpha.shape != (alpha.shape[0], alpha.shape[0], self.ring.ncoef):
            raise StructureError("alpha_M must be a non-empty square matrix")
        object.__setattr__(self, "alpha", alpha)
        m = alpha.shape[0]
        if self.action is None and self.generators is None:
            raise StructureError("a Hom-module needs an action tensor or generator operators")
        if self.action is not None:
            lam = np.array(self.action, dtype=complex)
            if lam.ndim != 4 or lam.shape[1:] != (m, m, self.ring.ncoef):
                raise StructureError(f"action must have shape (d, {m}, {m})")
            object.__setattr__(self, "action", lam)
        if self.generators is not None:
            gens = {k: np.array(v, dtype=complex) for k, v in self.generators.items()}
            for name, op in gens.items():
                if op.shape != (m, m, self.ring.ncoef):
                    raise StructureError(f"generator {name} must act on the {m}-dimensional module")
            object.__setattr__(self, "generators", gens)
            mult = dict(self.generator_alpha or {})
            missing = set(gens) - set(mult)
            if missing:
                raise StructureError(f"no alpha multiplier for generators {sorted(missing)}")
            object.__setattr__(self, "generator_alpha", mult)

    @property
    def dim(self) -> int:
        return self.alpha.shape[0]

    @property
    def alpha_op(self) -> LinearOperator:
        return LinearOperator(self.ring, (self.dim,), (self.dim,), self.alpha)

    def act(self, a: int | str) -> LinearOperator:
        """The operator ``m -> a . m`` for a basis index or generator name."""
        if isinstance(a, str):
            if self.generators is None:
                raise StructureError("this module has no named generators")
            rho = LinearOperator(self.ring, (self.dim,), (self.dim,), self.generators[a])
            return compose(self.alpha_op, rho)
        if self.action is None:
            raise StructureError("this module has no action tensor")
        return LinearOperator(self.ring, (self.dim,), (self.dim,), np.swapaxes(self.action[a], 0, 1))


def _tol(ring: ScalarRing, tolerance: float | None) -> float:
    return tolerance if tolerance is not None else ring.tolerance


# ---------------------------------------------------------------------------
# Module axioms


def _finite_axioms(a: HomAlgebra | HomBialgebra, mod: HomModule) -> tuple[float, float]:
    lam, am, aa = mod.action, mod.alpha, a.alpha
    if lam.shape[0] != a.dim:
        raise StructureError("action tensor and algebra have different dimensions")
    # (ab) alpha_M(x) = alpha_A(a) (b x)
    lhs = series_einsum("abp,yx,pyz->abxz", a.mu, am, lam)
    rhs = series_einsum("pa,bxy,pyz->abxz", aa, lam, lam)
    # alpha_M(a x) = alpha_A(a) alpha_M(x)
    lhs2 = series_einsum("axy,zy->axz", lam, am)
    rhs2 = series_einsum("pa,yx,pyz->axz", aa, am, lam)
    return norm(lhs - rhs), norm(lhs2 - rhs2)


def _generator_axioms(mod: HomModule, multipliers: dict[str, complex]) -> tuple[float, float]:
    am = mod.alpha_op
    rho = {k: LinearOperator(mod.ring, (mod.dim,), (mod.dim,), v) for k, v in mod.generators.items()}
    first = second = 0.0
    for a, b in product(rho, repeat=2):
        sa, sb = multipliers[a], multipliers[b]
        # the product in the twisted algebra is alpha_A(ab) = alpha_A(a) alpha_A(b)
        lhs = compose_all(am, rho[a], rho[b], am).scale(sa * sb)
        rhs = compose_all(am, rho[a], am, rho[b]).scale(sa)
        first = max(first, norm(lhs.matrix - rhs.matrix))
    for a in rho:
        lhs = compose_all(am, am, rho[a])
        rhs = compose_all(am, rho[a], am).scale(multipliers[a])
        second = max(second, norm(lhs.matrix - rhs.matrix))
    return first, second


def module_axiom_residuals(algebra, module: HomModule) -> tuple[float, float]:
    """Residuals of ``(ab) alpha_M(x) = alpha_A(a)(bx)`` and ``alpha_M(ax) = alpha_A(a) alpha_M(x)``.

    ``algebra`` is a finite Hom-algebra (needs ``module.action``) or a
    :class:`Uhsl2Model` / ``None`` for generator-level modules.
    """
    if isinstance(algebra, (HomAlgebra, HomBialgebra)):
        if module.action is None:
            raise StructureError("missing action tensor for a finite-dimensional algebra")
        return _finite_axioms(algebra, module)
    if isinstance(algebra, QTHomBialgebra):
        return module_axiom_residuals(algebra.base, module)
    if module.generators is None:
        raise StructureError("missing generator operators")
    multipliers = algebra.generator_alpha() if isinstance(algebra, Uhsl2Model) else module.generator_alpha
    return _generator_axioms(module, multipliers)


def check_module_axioms(algebra, module: HomModule, tolerance: float | None = None) -> VerificationReport:
    first, second = module_axiom_residuals(algebra, module)
    return VerificationReport(
        {"module_hom_associativity": first, "module_multiplicativity": second},
        _tol(module.ring, tolerance),
    )


# ---------------------------------------------------------------------------
# Constructors


def regular_module(a: QTHomBialgebra | HomBialgebra | HomAlgebra) -> HomModule:
    """``A`` acting on itself through its multiplication."""
    if isinstance(a, QTHomBialgebra):
        a = a.base
    return HomModule(a.ring, a.alpha, action=a.mu)


def finite_intertwining_residual(action: np.ndarray, alpha_a: np.ndarray, alpha_m: np.ndarray) -> float:
    """``alpha_M o lambda - lambda o (alpha_A (x) alpha_M)``."""
    lhs = series_einsum("axy,zy->axz", action, alpha_m)
    rhs = series_einsum("pa,yx,pyz->axz", alpha_a, alpha_m, action)
    return norm(lhs - rhs)


def generator_intertwining_residual(
    generators: dict[str, np.ndarray], multipliers: dict[str, complex], alpha_m: np.ndarray
) -> float:
    worst = 0.0
    for name, rho in generators.items():
        lhs = series_einsum("ij,jk->ik", alpha_m, rho)
        rhs = series_einsum("ij,jk->ik", rho, alpha_m) * multipliers[name]
        worst = max(worst, norm(lhs - rhs))
    return worst


def twisted_module(
    ring: ScalarRing,
    alpha_m: np.ndarray,
    *,
    action: np.ndarray | None = None,
    alpha_a: np.ndarray | None = None,
    generators: dict[str, np.ndarray] | None = None,
    generator_alpha: dict[str, complex] | None = None,
    tolerance: float | None = None,
) -> HomModule:
    """Twist a classical module along ``alpha_M``; the new action is ``alpha_M o lambda``.

    Requires ``alpha_M o lambda = lambda o (alpha_A (x) alpha_M)``.
    """
    tol = _tol(ring, tolerance)
    alpha_m = np.asarray(alpha_m, dtype=complex)
    if action is not None:
        action = np.asarray(action, dtype=complex)
        if alpha_a is None:
            alpha_a = ring.lift(np.eye(action.shape[0]))
        residual = finite_intertwining_residual(action, alpha_a, alpha_m)
        if not residual < tol:
            raise HypothesisError(f"alpha_M does not intertwine the action (residual {residual:.3e})")
        return HomModule(ring, alpha_m, action=series_einsum("axy,zy->axz", action, alpha_m))
    if generators is None:
        raise StructureError("missing action data")
    multipliers = dict(generator_alpha or {k: 1.0 for k in generators})
    residual = generator_intertwining_residual(generators, multipliers, alpha_m)
    if not residual < tol:
        raise HypothesisError(f"alpha_M does not intertwine the action (residual {residual:.3e})")
    return HomModule(ring, alpha_m, generators=generators, generator_alpha=multipliers)


def vn_module(model: Uhsl2Model, n: int) -> HomModule:
    """``V_n`` with ``alpha(v_i) = gamma^{-i} v_i`` as a module over the twisted algebra."""
    rho = {k: op.matrix for k, op in model.action(n).items()}
    return twisted_module(
        model.ring,
        model.alpha(n).matrix,
        generators=rho,
        generator_alpha=model.generator_alpha(),
        tolerance=model.tolerance,
    )


# ---------------------------------------------------------------------------
# B = tau o R


@dataclass(frozen=True, eq=False)
class HybeSolution:
    B: LinearOperator
    alpha: LinearOperator
    unverified_hypotheses: bool = False
    hypotheses: dict[str, float] = field(default_factory=dict)

    @property
    def ring(self) -> ScalarRing:
        return self.B.ring

    @property
    def dim(self) -> int:
        return self.alpha.shape[0]


def r_action(module: HomModule, r: np.ndarray) -> LinearOperator:
    """``x (x) y -> sum R[s, t] (s . x) (x) (t . y)`` on ``M (x) M``."""
    if module.action is None:
        raise StructureError("R can only be pushed through an action tensor")
    m = module.dim
    op = series_einsum("st,sxy,tuv->yvxu", r, module.action, module.action).reshape(m * m, m * m, -1)
    return LinearOperator(module.ring, (m, m), (m, m), op)


def _commutator(a: LinearOperator, b: LinearOperator) -> float:
    return norm(compose(a, b).matrix - compose(b, a).matrix)


def _guard(hypotheses: dict[str, float], tol: float, force: bool) -> bool:
    failing = {k: v for k, v in hypotheses.items() if not v < tol}
    if failing and not force:
        detail = ", ".join(f"{k} = {v:.3e}" for k, v in failing.items())
        raise HypothesisError(f"R is not alpha-invariant ({detail})")
    return bool(failing) or force


def build_b(
    module: HomModule,
    r_op: LinearOperator | None = None,
    *,
    q: QTHomBialgebra | None = None,
    force: bool = False,
    tolerance: float | None = None,
) -> HybeSolution:
    """``B = tau o R`` for an alpha-invariant ``R``.

    The invariance is checked on ``q`` when it is given, otherwise through
    ``[R_op, alpha_M (x) alpha_M]``.  ``force`` skips the refusal and marks
    the solution as resting on unverified hypotheses.
    """
    tol = _tol(module.ring, tolerance)
    if r_op is None:
        if q is None:
            raise ValueError("need either r_op or a quasi-triangular structure")
        r_op = r_action(module, q.R)
    aa = kron(module.alpha_op, module.alpha_op)
    if q is not None:
        hypotheses = {"alpha_invariance": is_alpha_invariant(q)}
    else:
        hypotheses = {"alpha_invariance": _commutator(r_op, aa)}
    unverified = _guard(hypotheses, tol, force)
    tau = twist_operator(module.ring, module.dim, module.dim)
    return HybeSolution(compose(tau, r_op), module.alpha_op, unverified, hypotheses)


def build_b_alpha(
    alpha_m: LinearOperator,
    r_op: LinearOperator,
    hypotheses: dict[str, float],
    *,
    force: bool = False,
    tolerance: float | None = None,
) -> HybeSolution:
    """``B_alpha = (alpha_M (x) alpha_M) o tau o R`` with ``R`` acting classically.

    ``hypotheses`` holds measured residuals (alpha-invariance of R and the
    intertwining of alpha_M); each must be below tolerance unless ``force``.
    """
    tol = _tol(alpha_m.ring, tolerance)
    unverified = _guard(hypotheses, tol, force)
    d = alpha_m.shape[0]
    b = compose_all(kron(alpha_m, alpha_m), twist_operator(alpha_m.ring, d, d), r_op)
    return HybeSolution(b, alpha_m, unverified, dict(hypotheses))


def finite_b_alpha(
    ring: ScalarRing,
    action: np.ndarray,
    r: np.ndarray,
    alpha_a: np.ndarray,
    alpha_m: np.ndarray,
    *,
    force: bool = False,
    tolerance: float | None = None,
) -> HybeSolution:
    """``B_alpha`` from a classical module of a classical quasi-triangular algebra.

    With ``alpha_A = Id`` the invariance hypothesis is automatic and the
    intertwining condition says that ``alpha_M`` is a module morphism.
    """
    action, r = np.asarray(action, dtype=complex), np.asarray(r, dtype=complex)
    alpha_a, alpha_m = np.asarray(alpha_a, dtype=complex), np.asarray(alpha_m, dtype=complex)
    hypotheses = {
        "alpha_invariance": norm(series_einsum("ap,pq,bq->ab", alpha_a, r, alpha_a) - r),
        "intertwining": finite_intertwining_residual(action, alpha_a, alpha_m),
    }
    classical = HomModule(ring, ring.lift(np.eye(alpha_m.shape[0])), action=action)
    m = alpha_m.shape[0]
    return build_b_alpha(
        LinearOperator(ring, (m,), (m,), alpha_m), r_action(classical, r), hypotheses, force=force, tolerance=tolerance
    )


def uhsl2_b_alpha(model: Uhsl2Model, n: int, *, force: bool = False) -> HybeSolution:
    """``B_alpha`` on ``V_n (x) V_n``."""
    hypotheses = {
        "alpha_invariance": r_invariance_residual(model, n),
        "intertwining": intertwining_residual(model, n),
    }
    return build_b_alpha(model.alpha(n), model.r_operator(n, n), hypotheses, force=force, tolerance=model.tolerance)


def b_alpha_v1_matrix(c: complex = 0.0, order: int = DEFAULT_ORDER) -> LinearOperator:
    """The 4 x 4 operator ``B_alpha`` on ``V_1 (x) V_1`` in the basis ``v0v0, v0v1, v1v0, v1v1``."""
    return uhsl2_b_alpha(Uhsl2Model(c, order), 1).B


# ---------------------------------------------------------------------------
# HYBE and braid relations


def hybe_sides(s: HybeSolution) -> tuple[LinearOperator, LinearOperator]:
    a, b = s.alpha, s.B
    ab, ba = kron(a, b), kron(b, a)
    return compose_all(ab, ba, ab), compose_all(ba, ab, ba)


def check_hybe(s: HybeSolution) -> tuple[float, float]:
    """Residual of ``(a(x)B)(B(x)a)(a(x)B) = (B(x)a)(a(x)B)(B(x)a)`` and of ``[B, a (x) a]``."""
    lhs, rhs = hybe_sides(s)
    commute = _commutator(s.B, kron(s.alpha, s.alpha))
    return norm(lhs.matrix - rhs.matrix), commute


def hybe_report(s: HybeSolution, tolerance: float | None = None) -> VerificationReport:
    hybe, commute = check_hybe(s)
    report = VerificationReport({"hybe": hybe, "commutes_with_alpha": commute}, _tol(s.ring, tolerance))
    report.properties.update({f"hypothesis_{k}": v for k, v in s.hypotheses.items()})
    if s.unverified_hypotheses:
        report.notes.append("unverified-hypotheses")
    return report


def ybe_residual(b: LinearOperator) -> float:
    """The classical equation ``(B(x)1)(1(x)B)(B(x)1) = (1(x)B)(B(x)1)(1(x)B)``."""
    d = math.isqrt(b.shape[0])
    ident = LinearOperator.identity(b.ring, (d,))
    s = HybeSolution(b, ident)
    return check_hybe(s)[0]


def braid_operators(s: HybeSolution, strands: int) -> list[LinearOperator]:
    """``B_i = a^{(i-1)} (x) B (x) a^{(n-i-1)}`` for ``i = 1..n-1`` on ``M^{(x)n}``."""
    if strands < 3:
        raise ValueError("braid relations need at least 3 strands")
    if s.dim**strands > MAX_BRAID_DIM:
        raise ValueError(f"{s.dim}^{strands} exceeds the cap of {MAX_BRAID_DIM} basis tensors")
    ops = []
    for i in range(1, strands):
        factors = [s.alpha] * (i - 1) + [s.B] + [s.alpha] * (strands - i - 1)
        ops.append(kron_all(factors))
    return ops


def check_braid_relations(ops: list[LinearOperator]) -> dict[str, float]:
    """Adjacent relations ``B_i B_{i+1} B_i = B_{i+1} B_i B_{i+1}`` and far commutation."""
    out = {}
    n = len(ops)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = ops[i], ops[j]
            if j == i + 1:
                r = norm(compose_all(a, b, a).matrix - compose_all(b, a, b).matrix)
                out[f"adjacent_{i + 1}_{j + 1}"] = r
            else:
                out[f"far_{i + 1}_{j + 1}"] = _commutator(a, b)
    return out
