"""Gradients, the Theta operator, Heisenberg generators and Noether symmetries."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .fields import VectorField, lie_bracket, lie_derivative
from .free_algebra import FreePoly, fp_derivative, fp_partial
from .scalars import Gaussian, I
from .weyl import (
    WeylElement,
    commutator,
    divide_by_hbar,
    hbar_check,
    lift,
    normal_form,
)


class InvariantViolation(AssertionError):
    """An identity that must hold by construction failed."""


class PreconditionViolated(ValueError):
    def __init__(self, message: str, residual: WeylElement):
        super().__init__(f"{message}: residual {residual}")
        self.residual = residual


def grad_components(h: WeylElement) -> list[WeylElement]:
    """``(dH/dQ_1, ..., dH/dQ_f, dH/dP_1, ..., dH/dP_f)`` in the quotient.

    Each entry is the partial derivative of a representative in direction 1,
    reduced modulo the CCR; this does not depend on the representative.
    """
    rep = lift(h)
    one = FreePoly.one(h.f)
    return [normal_form(fp_partial(rep, l, one)) for l in range(2 * h.f)]


@dataclass(frozen=True)
class GradientCovector:
    """The covector ``dH``: a vector field K is sent to ``L_K H``."""

    h: WeylElement

    @property
    def f(self) -> int:
        return self.h.f

    def __call__(self, k: VectorField) -> WeylElement:
        return covector_eval(self, k)


def grad(h: WeylElement) -> GradientCovector:
    return GradientCovector(h)


def covector_eval(w: GradientCovector, k: VectorField) -> WeylElement:
    return lie_derivative(k, w.h)


def theta_apply(w: GradientCovector) -> VectorField:
    """Theta[dH] = (dH[e_P1], ..., dH[e_Pf], -dH[e_Q1], ..., -dH[e_Qf]).

    ``e_X`` is the constant unit field in the X-direction. The result is
    certified as a vector field.
    """
    f = w.f
    on_units = [covector_eval(w, VectorField.unit(f, j)) for j in range(2 * f)]
    comps = on_units[f:] + [-x for x in on_units[:f]]
    return VectorField(comps)


def heisenberg_generator(h: WeylElement) -> VectorField:
    """``((i/hbar)[H, Q_k], (i/hbar)[H, P_k])_k``.

    This operand order makes the result coincide with ``theta_apply(grad(h))``.
    """
    f = h.f
    low = h.min_hbar()
    need = 1 if low is None else low + 1
    comps = []
    for kind in ("Q", "P"):
        for k in range(1, f + 1):
            c = commutator(h, WeylElement.gen(f, kind, k))
            if not hbar_check(c, need):
                raise InvariantViolation(f"[H, {kind}_{k}] is not divisible by hbar")
            comps.append(divide_by_hbar(c).scale(I))
    return VectorField(comps)


def poisson_bracket(F: WeylElement, H: WeylElement) -> WeylElement:
    """``dH[Theta dF]``; with this convention pb(Q, P) = -1."""
    return covector_eval(grad(H), theta_apply(grad(F)))


def free_theta_pairing(F: FreePoly, H: FreePoly) -> FreePoly:
    """``dF[T dH] + dH[T dF]`` entirely in the free algebra.

    ``T dX = (dX/dP[1], -dX/dQ[1])`` per degree of freedom; nothing is reduced
    modulo the CCR, so this is generally nonzero.
    """
    def naive_theta(x: FreePoly) -> list[FreePoly]:
        f = x.f
        one = FreePoly.one(f)
        parts = [fp_partial(x, l, one) for l in range(2 * f)]
        return parts[f:] + [-p for p in parts[:f]]

    return fp_derivative(F, naive_theta(H)) + fp_derivative(H, naive_theta(F))


def is_conserved(i: WeylElement, k: VectorField) -> bool:
    return not covector_eval(grad(i), k)


def noether_symmetry(h: WeylElement, i: WeylElement) -> VectorField:
    """The symmetry ``Theta[dI]`` for a quantity ``i`` conserved by ``h``'s flow."""
    k = heisenberg_generator(h)
    residual = covector_eval(grad(i), k)
    if residual:
        raise PreconditionViolated("quantity is not conserved", residual)
    g = theta_apply(grad(i))
    if not lie_bracket(k, g).is_zero():
        raise InvariantViolation("[[K, Theta dI]] does not vanish")
    return g


class NoetherianCheck(NamedTuple):
    holds: bool
    lhs: VectorField
    rhs: VectorField
    residual: tuple


def noetherian_identity_check(F: WeylElement, H: WeylElement) -> NoetherianCheck:
    """Compare ``Theta d(dH[Theta dF])`` with ``[[Theta dF, Theta dH]]``."""
    lhs = theta_apply(grad(poisson_bracket(F, H)))
    rhs = lie_bracket(theta_apply(grad(F)), theta_apply(grad(H)))
    residual = tuple(a - b for a, b in zip(lhs.comps, rhs.comps))
    return NoetherianCheck(not any(residual), lhs, rhs, residual)


def covector_lie_derivative(k: VectorField, w: GradientCovector, g: VectorField) -> WeylElement:
    """``(L_K dH)[G] = L_K(dH[G]) - dH[[[K, G]]]``."""
    return lie_derivative(k, covector_eval(w, g)) - covector_eval(w, lie_bracket(k, g))


class CCRResidual(NamedTuple):
    order: int
    relation: str
    residual: WeylElement


@dataclass(frozen=True)
class FlowSeries:
    """Formal Taylor series ``u(t) = u + sum_j t**j c_j`` of the Heisenberg flow.

    ``coefficients[j - 1]`` is ``c_j``, a 2f-tuple ordered like vector field
    components.
    """

    hamiltonian: WeylElement
    coefficients: tuple

    @property
    def order(self) -> int:
        return len(self.coefficients)

    @property
    def f(self) -> int:
        return self.hamiltonian.f

    def series(self) -> list[tuple]:
        """All orders 0..N, starting with the generators themselves."""
        f = self.f
        base = tuple(
            [WeylElement.Q(f, k) for k in range(1, f + 1)]
            + [WeylElement.P(f, k) for k in range(1, f + 1)]
        )
        return [base] + list(self.coefficients)

    def ccr_residuals(self) -> list[CCRResidual]:
        """Nonzero t**j coefficients (1 <= j <= N) of every CCR residual."""
        f = self.f
        s = self.series()
        out = []
        pairs = []
        for k in range(f):
            for l in range(f):
                pairs.append((f"[Q_{k+1},P_{l+1}]", k, f + l))
                if k < l:
                    pairs.append((f"[Q_{k+1},Q_{l+1}]", k, l))
                    pairs.append((f"[P_{k+1},P_{l+1}]", f + k, f + l))
        for j in range(1, self.order + 1):
            for name, a, b in pairs:
                r = WeylElement.zero(f)
                for i in range(j + 1):
                    r = r + commutator(s[i][a], s[j - i][b])
                if r:
                    out.append(CCRResidual(j, name, r))
        return out


def flow_taylor(h: WeylElement, order: int) -> FlowSeries:
    """Lie series of the Heisenberg flow: ``c_1 = K``, ``c_{j+1} = L_K c_j / (j+1)``."""
    if order < 1:
        raise ValueError("order must be at least 1")
    k = heisenberg_generator(h)
    coeffs = [k.comps]
    for j in range(1, order):
        prev = coeffs[-1]
        factor = Gaussian(Fraction(1, j + 1))
        coeffs.append(tuple(lie_derivative(k, c).scale(factor) for c in prev))
    series = FlowSeries(h, tuple(coeffs))
    bad = series.ccr_residuals()
    if bad:
        raise InvariantViolation(f"flow series breaks the CCR: {bad[0]}")
    return series
