import pytest

from weylham import (
    FreePoly,
    NotAVectorField,
    VectorField,
    WeylElement,
    fp_partial,
    grad_components,
    heisenberg_generator,
    ideal_sample,
    is_vector_field,
    lie_bracket,
    lie_derivative,
    lift,
    normal_form,
)
from weylham import sampling
from weylham.fields import lie_derivative_of_representatives
from weylham.scalars import I_HBAR, Gaussian
from weylham.weyl import commutator, divide_by_hbar


def test_constant_fields_are_members():
    ok, report = is_vector_field([1, 0])
    assert ok and report == []
    assert is_vector_field([WeylElement.P(), -WeylElement.Q()])[0]


def test_non_member_reports_residual():
    ok, report = is_vector_field([WeylElement.Q(), 0])
    assert not ok
    (v,) = report
    assert (v.identity, v.k, v.l) == ("QP", 1, 1)
    assert v.residual == WeylElement.const(1, I_HBAR)
    with pytest.raises(NotAVectorField):
        VectorField([WeylElement.Q(), 0])


def test_free_components_are_reduced(Q, P):
    k = VectorField([(P * Q - Q * P).scale(Gaussian(0, 1)), 0])
    assert k.comps[0] == WeylElement.const(1, I_HBAR * Gaussian(0, -1))


def test_two_dof_rotation_is_member():
    f = 2
    q1, q2, p1, p2 = (WeylElement.gen(f, x, k) for x, k in [("Q", 1), ("Q", 2), ("P", 1), ("P", 2)])
    assert is_vector_field([-q2, q1, -p2, p1])[0]
    ok, report = is_vector_field([q2, q1, p2, p1])
    assert not ok and {v.identity for v in report} <= {"QQ", "PP", "QP"}


def test_lie_derivative_examples(wQ, wP):
    k = VectorField([2 * wP, 0])
    assert lie_derivative(k, wQ**2) == (wP * wQ).scale(4) + 2 * I_HBAR
    assert lie_derivative(VectorField.unit(1, 0), wQ**3) == 3 * wQ**2
    assert lie_bracket(VectorField.unit(1, 0), VectorField.unit(1, 1)).is_zero()


@pytest.mark.parametrize("seed", range(60))
def test_lie_derivative_agrees_with_free_route(seed):
    rng = sampling.rng_of(seed)
    f = rng.choice([1, 2])
    k = sampling.vector_field(rng, f, 3)
    h = sampling.hamiltonian(rng, f, 4)
    assert lie_derivative(k, h) == lie_derivative_of_representatives(lift(h), [lift(c) for c in k.comps])


@pytest.mark.parametrize("seed", range(40))
def test_heisenberg_field_acts_by_commutator(seed):
    # the generator of H acts on every observable X as (i/hbar)[H, X]
    rng = sampling.rng_of(seed)
    f = rng.choice([1, 2])
    h = sampling.hamiltonian(rng, f, 4)
    x = sampling.hamiltonian(rng, f, 3)
    k = heisenberg_generator(h)
    expected = divide_by_hbar(commutator(h, x)).scale(Gaussian(0, 1))
    assert lie_derivative(k, x) == expected


@pytest.mark.parametrize("seed", range(200))
def test_bracket_closure(seed):
    rng = sampling.rng_of(seed)
    f = 1 if seed % 4 else 2
    k = sampling.vector_field(rng, f, 3)
    g = sampling.vector_field(rng, f, 3)
    assert is_vector_field(lie_bracket(k, g).comps)[0]


@pytest.mark.parametrize("seed", range(30))
def test_bracket_antisymmetry_and_jacobi(seed):
    rng = sampling.rng_of(seed)
    a, b, c = (sampling.vector_field(rng, 1, 2) for _ in range(3))
    assert (lie_bracket(a, b) + lie_bracket(b, a)).is_zero()
    jac = (
        lie_bracket(lie_bracket(a, b), c)
        + lie_bracket(lie_bracket(b, c), a)
        + lie_bracket(lie_bracket(c, a), b)
    )
    assert jac.is_zero()


@pytest.mark.parametrize("seed", range(40))
def test_lie_derivative_is_a_representation(seed):
    rng = sampling.rng_of(seed)
    k = sampling.vector_field(rng, 1, 3)
    g = sampling.vector_field(rng, 1, 3)
    h = sampling.hamiltonian(rng, 1, 4)
    lhs = lie_derivative(k, lie_derivative(g, h)) - lie_derivative(g, lie_derivative(k, h))
    assert lhs == lie_derivative(lie_bracket(k, g), h)


@pytest.mark.parametrize("seed", range(30))
def test_lie_derivative_is_a_derivation(seed):
    rng = sampling.rng_of(seed)
    k = sampling.vector_field(rng, 1, 3)
    a = sampling.hamiltonian(rng, 1, 3)
    b = sampling.hamiltonian(rng, 1, 3)
    assert lie_derivative(k, a * b) == lie_derivative(k, a) * b + a * lie_derivative(k, b)


@pytest.mark.parametrize("seed", range(30))
def test_field_is_recovered_from_generators(seed):
    rng = sampling.rng_of(seed)
    f = rng.choice([1, 2])
    k = sampling.vector_field(rng, f, 3)
    gens = [WeylElement.Q(f, j) for j in range(1, f + 1)] + [WeylElement.P(f, j) for j in range(1, f + 1)]
    assert tuple(lie_derivative(k, x) for x in gens) == k.comps


@pytest.mark.parametrize("seed", range(30))
def test_cauchy_riemann(seed):
    # for one degree of freedom dK_Q/dQ = -dK_P/dP
    rng = sampling.rng_of(seed)
    k = sampling.vector_field(rng, 1, 4)
    kq, kp = k.comps
    assert grad_components(kq)[0] == -grad_components(kp)[1]


@pytest.mark.parametrize("seed", range(50))
def test_independent_of_representatives(seed):
    rng = sampling.rng_of(seed)
    k = sampling.vector_field(rng, 1, 3)
    h = sampling.hamiltonian(rng, 1, 4)
    h_rep = lift(h) + ideal_sample(rng, 1, 3)
    k_reps = [lift(c) + ideal_sample(rng, 1, 3) for c in k.comps]
    assert lie_derivative_of_representatives(h_rep, k_reps) == lie_derivative(k, h)


def test_naive_partials_depend_on_representative(Q, P):
    # QP - PQ and i hbar are the same element, yet their literal Q-partials
    # in the direction Q reduce to different results
    first = Q * P - P * Q
    second = FreePoly.const(1, I_HBAR)
    assert normal_form(first) == normal_form(second)
    a = normal_form(fp_partial(first, 0, Q))
    b = normal_form(fp_partial(second, 0, Q))
    assert a == WeylElement.const(1, I_HBAR)
    assert b.is_zero()
    assert a != b


def test_bracket_examples(wQ, wP):
    k = VectorField([2 * wP, 0])
    g = VectorField([0, -2 * wQ])
    assert lie_bracket(k, g) == VectorField([4 * wQ, -4 * wP])
    assert lie_bracket(k, k).is_zero()
