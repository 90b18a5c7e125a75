import pytest

from weylham import (
    ArityError,
    Coefficient,
    DimensionMismatch,
    FreePoly,
    derivative_at,
    fp_arith,
    fp_compose,
    fp_derivative,
    fp_partial,
    fp_second_derivative,
)
from weylham import sampling
from weylham.free_algebra import Generator, generators
from weylham.scalars import Gaussian

HBAR = Coefficient.hbar(1)


def hbar_part(p: FreePoly, k: int) -> FreePoly:
    """The coefficient of hbar^k, as an hbar-free polynomial."""
    return FreePoly(p.f, {w: c.terms.get(k, 0) for w, c in p.items()})


def shifted(f, base, directions_by_power):
    """X_j + sum_k hbar^k V_j^(k), using hbar as a central bookkeeping parameter."""
    out = list(base)
    for k, dirs in directions_by_power.items():
        out = [x + d.scale(Coefficient.hbar(k)) for x, d in zip(out, dirs)]
    return out


def test_generator_indexing():
    assert Generator("Q", 2).index(3) == 1
    assert Generator("P", 1).index(3) == 3
    assert Generator.from_index(5, 3) == Generator("P", 3)
    with pytest.raises(DimensionMismatch):
        Generator("Q", 3).index(2)


def test_product_is_concatenation(Q, P):
    assert (Q * P).items() == [((0, 1), Coefficient.coerce(1))]
    assert Q * P != P * Q


def test_cancellation(Q, P):
    assert Q * P + (-(Q * P)) == FreePoly.zero(1)
    assert fp_arith("sub", Q * P, Q * P) == FreePoly.zero(1)


def test_square_of_commutator(Q, P):
    c = Q * P - P * Q
    expected = Q * P * Q * P - Q * P * P * Q - P * Q * Q * P + P * Q * P * Q
    assert c * c == expected
    assert c.degree() == 2 and (c * c).degree() == 4


def test_mixed_dimensions_rejected():
    with pytest.raises(DimensionMismatch):
        FreePoly.Q(1) + FreePoly.Q(2)


@pytest.mark.parametrize("seed", range(40))
def test_ring_axioms(seed):
    rng = sampling.rng_of(seed)
    a, b, c = (sampling.free_poly(rng, 2, 3, hbar_range=(-1, 1)) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert a + b == b + a
    assert a * FreePoly.one(2) == a == FreePoly.one(2) * a


def test_partial_examples(Q, P):
    v = P + Q * Q.scale(2)
    assert fp_partial(Q * P * Q, 0, v) == v * P * Q + Q * P * v
    assert fp_partial(Q * P - P * Q, 0, Q) == Q * P - P * Q
    assert fp_partial(Q * P, Generator("P", 1), FreePoly.one(1)) == Q


@pytest.mark.parametrize("m", range(6))
@pytest.mark.parametrize("n", range(6))
def test_partial_of_monomial_in_p(m, n, Q, P):
    got = fp_partial(P**m * Q**n, 1, FreePoly.one(1))
    expected = (P ** (m - 1) * Q**n).scale(m) if m else FreePoly.zero(1)
    assert got == expected


def test_derivative_examples(Q, P):
    zero, one = FreePoly.zero(1), FreePoly.one(1)
    assert fp_derivative(P * P, [zero, one]) == P.scale(2)
    d = fp_derivative(P * Q * P, [zero, Q.scale(-2)])
    assert d == (Q * Q * P).scale(-2) + (P * Q * Q).scale(-2)
    assert fp_derivative(FreePoly.const(1, 7), [P, Q]) == zero


def test_derivative_arity():
    with pytest.raises(ArityError):
        fp_derivative(FreePoly.Q(), [FreePoly.one(1)])


@pytest.mark.parametrize("seed", range(30))
def test_derivative_matches_first_order_expansion(seed):
    rng = sampling.rng_of(seed)
    f = rng.choice([1, 2])
    p = sampling.free_poly(rng, f, 4)
    v = [sampling.free_poly(rng, f, 2) for _ in range(2 * f)]
    expanded = fp_compose(p, shifted(f, generators(f), {1: v}))
    assert fp_derivative(p, v) == hbar_part(expanded, 1)


@pytest.mark.parametrize("seed", range(30))
def test_second_derivative_matches_mixed_expansion(seed):
    rng = sampling.rng_of(seed)
    f = rng.choice([1, 2])
    p = sampling.free_poly(rng, f, 4)
    v = [sampling.free_poly(rng, f, 1) for _ in range(2 * f)]
    w = [sampling.free_poly(rng, f, 1) for _ in range(2 * f)]
    k = p.degree() + 1
    expanded = fp_compose(p, shifted(f, generators(f), {1: v, k: w}))
    assert fp_second_derivative(p, v, w) == hbar_part(expanded, 1 + k)


@pytest.mark.parametrize("seed", range(30))
def test_second_derivative_symmetric(seed):
    rng = sampling.rng_of(seed)
    p = sampling.free_poly(rng, 1, 5)
    v = [sampling.free_poly(rng, 1, 2) for _ in range(2)]
    w = [sampling.free_poly(rng, 1, 2) for _ in range(2)]
    assert fp_second_derivative(p, v, w) == fp_second_derivative(p, w, v)


def test_second_derivative_examples(Q, P):
    zero, one = FreePoly.zero(1), FreePoly.one(1)
    e_q = [one, zero]
    assert fp_second_derivative(Q * Q * Q, e_q, e_q) == Q.scale(6)
    assert fp_second_derivative(Q * P + P, e_q, [zero, one]) == FreePoly.const(1, 1)
    assert fp_second_derivative(Q.scale(3) + P, [P, Q], [Q, Q]) == zero


def test_second_derivative_holds_directions_constant(Q, P):
    zero = FreePoly.zero(1)
    # the Q inside the direction is not itself differentiated
    assert fp_second_derivative(Q * Q, [Q, zero], [Q, zero]) == (Q * Q).scale(2)


def test_compose_examples(Q, P):
    assert fp_compose(Q * P, [P, Q]) == P * Q
    assert fp_compose(Q * Q, [Q + P, P]) == Q * Q + Q * P + P * Q + P * P
    two = FreePoly.Q(2, 1) * FreePoly.P(2, 2)
    assert fp_compose(Q * P, [FreePoly.Q(2, 1), FreePoly.P(2, 2)]) == two


@pytest.mark.parametrize("seed", range(30))
def test_chain_rule(seed):
    rng = sampling.rng_of(seed)
    p = sampling.free_poly(rng, 1, 3)
    q = [sampling.free_poly(rng, 1, 2) for _ in range(2)]
    v = [sampling.free_poly(rng, 1, 2) for _ in range(2)]
    lhs = fp_derivative(fp_compose(p, q), v)
    rhs = derivative_at(p, q, [fp_derivative(qj, v) for qj in q])
    assert lhs == rhs


@pytest.mark.parametrize("seed", range(20))
def test_derivative_of_derivative(seed):
    rng = sampling.rng_of(seed)
    p = sampling.free_poly(rng, 1, 4)
    u = [sampling.free_poly(rng, 1, 2) for _ in range(2)]
    v = [sampling.free_poly(rng, 1, 1) for _ in range(2)]
    lhs = fp_derivative(fp_derivative(p, u), v)
    rhs = fp_second_derivative(p, u, v) + fp_derivative(p, [fp_derivative(uj, v) for uj in u])
    assert lhs == rhs


def test_degree_and_coefficient(Q, P):
    p = (Q * P * Q).scale(Gaussian(0, 2)) + FreePoly.const(1, 3)
    assert p.degree() == 3
    assert p.coefficient((0, 1, 0)) == Coefficient.coerce(Gaussian(0, 2))
    assert FreePoly.zero(1).degree() < 0


@pytest.mark.parametrize("seed", range(30))
def test_product_rule(seed):
    rng = sampling.rng_of(seed)
    f = rng.choice([1, 2])
    p = sampling.free_poly(rng, f, 4)
    q = sampling.free_poly(rng, f, 4)
    v = [sampling.free_poly(rng, f, 2) for _ in range(2 * f)]
    assert fp_derivative(p * q, v) == fp_derivative(p, v) * q + p * fp_derivative(q, v)


@pytest.mark.parametrize("seed", range(20))
def test_partial_is_linear(seed):
    rng = sampling.rng_of(seed)
    p, q, v, w = (sampling.free_poly(rng, 1, 3) for _ in range(4))
    c = sampling.coefficient(rng)
    assert fp_partial(p.scale(c) + q, 0, v) == fp_partial(p, 0, v).scale(c) + fp_partial(q, 0, v)
    assert fp_partial(p, 1, v.scale(c) + w) == fp_partial(p, 1, v).scale(c) + fp_partial(p, 1, w)


def test_degree_is_additive_on_monomials():
    rng = sampling.rng_of(6)
    for _ in range(20):
        a = FreePoly.monomial(2, [rng.randrange(4) for _ in range(rng.randint(0, 5))], 3)
        b = FreePoly.monomial(2, [rng.randrange(4) for _ in range(rng.randint(0, 5))], 2)
        assert (a * b).degree() == a.degree() + b.degree()


def test_second_derivative_of_qp(Q, P):
    vq, vp, wq, wp = Q + P, Q * Q, P.scale(3), Q * P
    assert fp_second_derivative(Q * P, [vq, vp], [wq, wp]) == wq * vp + vq * wp
    assert fp_second_derivative(Q * P, [Q, P], [P, Q]) == P * P + Q * Q
    assert fp_second_derivative(Q * P, [P, Q], [Q, P]) == P * P + Q * Q


def test_compose_substitutes_square(Q, P):
    assert fp_compose(Q * Q, [Q * P, P]) == Q * P * Q * P
    a = P * Q + FreePoly.const(1, 2)
    assert fp_compose(Q, [a, Q]) == a


def test_chain_rule_instance(Q, P):
    # p = X^2 at q = QP, in the direction V
    v = [P + Q, Q.scale(2)]
    q = [Q * P, FreePoly.zero(1)]
    x = Q * Q
    dq = [fp_derivative(qj, v) for qj in q]
    lhs = fp_derivative(fp_compose(x, q), v)
    zero = FreePoly.zero(1)
    assert lhs == derivative_at(x, q, dq)
    assert lhs == dq[0] * q[0] + q[0] * dq[0]
    assert fp_second_derivative(x, [q[0], zero], [dq[0], zero]) == q[0] * dq[0] + dq[0] * q[0]


def test_zero_degrees_of_freedom():
    a = FreePoly.const(0, 3)
    b = FreePoly.const(0, Coefficient({1: 2}))
    assert a * b == b * a == FreePoly.const(0, Coefficient({1: 6}))
    assert fp_derivative(a, []) == FreePoly.zero(0)
    assert fp_compose(a, []) == a
