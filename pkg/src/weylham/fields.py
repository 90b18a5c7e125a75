"""Abstract vector fields on quantum phase space and their Lie derivatives."""

from __future__ import annotations

from typing import NamedTuple, Sequence

from .free_algebra import ArityError, DimensionMismatch, FreePoly, fp_derivative
from .scalars import ONE_C
from .weyl import NormalMonomial, WeylElement, commutator, normal_form

# A scalar field is just an element of the Weyl algebra.
ScalarField = WeylElement


class NotAVectorField(ValueError):
    def __init__(self, violations):
        self.violations = violations
        desc = "; ".join(f"{v.identity}({v.k},{v.l}): {v.residual}" for v in violations)
        super().__init__(f"membership conditions fail: {desc}")


class Violation(NamedTuple):
    """A failing membership identity; ``residual`` is lhs - rhs."""

    identity: str
    k: int
    l: int
    residual: WeylElement


def _as_weyl(x, f=None) -> WeylElement:
    if isinstance(x, WeylElement):
        return x
    if isinstance(x, FreePoly):
        return normal_form(x)
    if f is None:
        raise TypeError(f"cannot use {type(x).__name__} as a component")
    return WeylElement.const(f, x)


def membership_violations(comps: Sequence[WeylElement]) -> list[Violation]:
    """Check the CCR-preservation identities for a 2f-tuple of components.

    For all k, l (1-based dof indices):
    ``[K_qk, Q_l] = [K_ql, Q_k]``, ``[K_pk, P_l] = [K_pl, P_k]`` and
    ``[K_qk, P_l] = [K_pl, Q_k]``.
    """
    if len(comps) % 2:
        raise ArityError("a vector field needs an even number of components")
    f = len(comps) // 2
    for c in comps:
        if c.f != f:
            raise DimensionMismatch(f"component has f={c.f}, expected {f}")
    kq, kp = comps[:f], comps[f:]
    qs = [WeylElement.Q(f, k + 1) for k in range(f)]
    ps = [WeylElement.P(f, k + 1) for k in range(f)]
    out = []
    for k in range(f):
        for l in range(f):
            if k < l:
                r = commutator(kq[k], qs[l]) - commutator(kq[l], qs[k])
                if r:
                    out.append(Violation("QQ", k + 1, l + 1, r))
                r = commutator(kp[k], ps[l]) - commutator(kp[l], ps[k])
                if r:
                    out.append(Violation("PP", k + 1, l + 1, r))
            r = commutator(kq[k], ps[l]) - commutator(kp[l], qs[k])
            if r:
                out.append(Violation("QP", k + 1, l + 1, r))
    return out


def is_vector_field(comps) -> tuple[bool, list[Violation]]:
    """Membership test with a report of every failing identity."""
    comps = list(comps)
    comps = [_as_weyl(c, len(comps) // 2) for c in comps]
    report = membership_violations(comps)
    return not report, report


class VectorField:
    """A certified member of the Lie algebra of abstract vector fields.

    ``comps`` is ordered ``(K_q1, ..., K_qf, K_p1, ..., K_pf)``. Membership is
    checked at construction unless ``check=False`` is passed by code that
    already guarantees it.
    """

    __slots__ = ("f", "comps")

    def __init__(self, comps, check: bool = True):
        comps = list(comps)
        if len(comps) % 2:
            raise ArityError("a vector field needs an even number of components")
        f = len(comps) // 2
        comps = tuple(_as_weyl(c, f) for c in comps)
        if check:
            report = membership_violations(comps)
            if report:
                raise NotAVectorField(report)
        self.f = f
        self.comps = comps

    @classmethod
    def zero(cls, f: int) -> "VectorField":
        return cls([WeylElement.zero(f)] * (2 * f), check=False)

    @classmethod
    def unit(cls, f: int, index: int) -> "VectorField":
        """Constant field 1 in component ``index`` (0-based letter index)."""
        comps = [WeylElement.zero(f)] * (2 * f)
        comps[index] = WeylElement.one(f)
        return cls(comps, check=False)

    @property
    def q(self) -> tuple:
        return self.comps[: self.f]

    @property
    def p(self) -> tuple:
        return self.comps[self.f:]

    def is_zero(self) -> bool:
        return not any(self.comps)

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.comps == other.comps

    def __hash__(self):
        return hash(self.comps)

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField([a + b for a, b in zip(self.comps, other.comps)], check=False)

    def __sub__(self, other: "VectorField") -> "VectorField":
        return VectorField([a - b for a, b in zip(self.comps, other.comps)], check=False)

    def __neg__(self):
        return VectorField([-a for a in self.comps], check=False)

    def scale(self, c) -> "VectorField":
        return VectorField([a.scale(c) for a in self.comps], check=False)

    def __repr__(self):
        from .cli.printer import print_canonical

        return f"VectorField{print_canonical(self.comps)}"

    __str__ = __repr__


def _word_monomial(word: tuple, f: int) -> NormalMonomial:
    p = [0] * f
    q = [0] * f
    for x in word:
        if x < f:
            q[x] += 1
        else:
            p[x - f] += 1
    return NormalMonomial(tuple(p), tuple(q))


def derivative_in_quotient(h: WeylElement, directions: Sequence[WeylElement]) -> WeylElement:
    """``h'[directions]`` reduced modulo the CCR, differentiating the normal form.

    Prefixes and suffixes of a normal-ordered word are normal-ordered, so each
    term is a product of three Weyl elements.
    """
    f = h.f
    if len(directions) != 2 * f:
        raise ArityError(f"expected {2 * f} directions, got {len(directions)}")
    out = WeylElement.zero(f)
    for m, c in h._terms.items():
        word = m.word()
        for n, x in enumerate(word):
            d = directions[x]
            if not d:
                continue
            pre = WeylElement._raw(f, {_word_monomial(word[:n], f): c})
            post = WeylElement._raw(f, {_word_monomial(word[n + 1:], f): ONE_C})
            out = out + pre * d * post
    return out


def lie_derivative(k: VectorField, h: WeylElement) -> WeylElement:
    """Lie derivative of the scalar field ``h`` along ``k``."""
    if not isinstance(k, VectorField):
        raise TypeError("lie_derivative needs a certified VectorField")
    if h.f != k.f:
        raise DimensionMismatch(f"f={h.f} vs f={k.f}")
    return derivative_in_quotient(h, k.comps)


def lie_derivative_of_representatives(
    h_rep: FreePoly, k_reps: Sequence[FreePoly]
) -> WeylElement:
    """``(H'[K]) mod J`` computed literally on arbitrary free representatives."""
    return normal_form(fp_derivative(h_rep, list(k_reps)))


def lie_bracket(k: VectorField, g: VectorField) -> VectorField:
    """``[[K, G]] = (L_K G_i - L_G K_i)_i``; the result is re-certified."""
    if k.f != g.f:
        raise DimensionMismatch(f"f={k.f} vs f={g.f}")
    comps = [lie_derivative(k, gi) - lie_derivative(g, ki) for ki, gi in zip(k.comps, g.comps)]
    return VectorField(comps)
