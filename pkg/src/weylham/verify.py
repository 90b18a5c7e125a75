"""Named property suites, runnable from the command line via ``verify``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import sampling
from .fields import VectorField, lie_bracket, lie_derivative, lie_derivative_of_representatives
from .free_algebra import FreePoly, fp_partial
from .hamiltonian import (
    flow_taylor,
    grad,
    grad_components,
    heisenberg_generator,
    noether_symmetry,
    noetherian_identity_check,
    poisson_bracket,
    theta_apply,
)
from .matrix_eval import (
    Assignment,
    eval_free,
    hall_polynomials,
    random_rational,
    separate,
    separation_dim,
)
from .weyl import (
    WeylElement,
    closed_commutator,
    commutator,
    ideal_sample,
    lift,
    normal_form,
    rewrite_normal_form,
)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int
    detail: str = ""


SUITES: dict[str, Callable[..., SuiteResult]] = {}


def suite(name: str):
    def register(fn):
        SUITES[name] = fn
        return fn

    return register


@suite("lemVertrel")
def vertrel(max_n: int = 8, seed: int = 0) -> SuiteResult:
    """Closed-form commutator of Q^n and P^m against both normal-form routes."""
    q, p = FreePoly.Q(), FreePoly.P()
    checked = 0
    for n in range(max_n + 1):
        for m in range(max_n + 1):
            closed = closed_commutator(n, m)
            free = q**n * p**m - p**m * q**n
            if closed != rewrite_normal_form(free):
                return SuiteResult("lemVertrel", False, checked, f"rewriting differs at n={n}, m={m}")
            if closed != commutator(WeylElement.Q() ** n, WeylElement.P() ** m):
                return SuiteResult("lemVertrel", False, checked, f"product differs at n={n}, m={m}")
            checked += 1
    return SuiteResult("lemVertrel", True, checked)


def hilfssatz_sides(m: int, n: int, M: int, N: int) -> tuple[FreePoly, FreePoly]:
    """``dA/dQ[dB/dP[1]]`` and ``dB/dP[dA/dQ[1]]`` for A = P^m Q^n, B = P^M Q^N."""
    q, p = FreePoly.Q(), FreePoly.P()
    one = FreePoly.one(1)
    a = p**m * q**n
    b = p**M * q**N
    return fp_partial(a, 0, fp_partial(b, 1, one)), fp_partial(b, 1, fp_partial(a, 0, one))


@suite("proHilfssatz")
def hilfssatz(max_n: int = 5, seed: int = 0) -> SuiteResult:
    checked = 0
    r = range(max_n + 1)
    for m in r:
        for n in r:
            for M in r:
                for N in r:
                    lhs, rhs = hilfssatz_sides(m, n, M, N)
                    if normal_form(lhs) != normal_form(rhs):
                        return SuiteResult("proHilfssatz", False, checked, f"fails at {(m, n, M, N)}")
                    checked += 1
    return SuiteResult("proHilfssatz", True, checked)


@suite("brackets")
def brackets(max_n: int = 4, seed: int = 0, pairs: int = 200, triples: int = 100) -> SuiteResult:
    rng = sampling.rng_of(seed)
    for i in range(pairs):
        F, H = (sampling.hamiltonian(rng, 1, max_n) for _ in range(2))
        if poisson_bracket(F, H) + poisson_bracket(H, F):
            return SuiteResult("brackets", False, i, f"antisymmetry fails for {F}, {H}")
    for i in range(triples):
        F, G, H = (sampling.hamiltonian(rng, 1, max_n) for _ in range(3))
        pb = poisson_bracket
        if pb(pb(F, G), H) + pb(pb(G, H), F) + pb(pb(H, F), G):
            return SuiteResult("brackets", False, pairs + i, f"Jacobi fails for {F}, {G}, {H}")
    return SuiteResult("brackets", True, pairs + triples)


@suite("homomorphism")
def homomorphism(max_n: int = 3, seed: int = 0, cases: int = 100) -> SuiteResult:
    rng = sampling.rng_of(seed)
    for i in range(cases):
        k = sampling.vector_field(rng, 1, max_n)
        g = sampling.vector_field(rng, 1, max_n)
        h = sampling.hamiltonian(rng, 1, max_n + 1)
        lhs = lie_derivative(k, lie_derivative(g, h)) - lie_derivative(g, lie_derivative(k, h))
        if lhs != lie_derivative(lie_bracket(k, g), h):
            return SuiteResult("homomorphism", False, i, f"fails for K={k}, G={g}, H={h}")
    return SuiteResult("homomorphism", True, cases)


@suite("noether")
def noether(max_n: int = 4, seed: int = 0, cases: int = 50) -> SuiteResult:
    rng = sampling.rng_of(seed)
    f = 2
    h = WeylElement.P(f, 1) ** 2 + WeylElement.P(f, 2) ** 2
    i = WeylElement.Q(f, 1) * WeylElement.P(f, 2) - WeylElement.Q(f, 2) * WeylElement.P(f, 1)
    g = noether_symmetry(h, i)
    expected = VectorField([-WeylElement.Q(f, 2), WeylElement.Q(f, 1), -WeylElement.P(f, 2), WeylElement.P(f, 1)])
    if g != expected:
        return SuiteResult("noether", False, 0, f"rotation symmetry is {g}")
    for n in range(cases):
        h = sampling.hamiltonian(rng, 1, max_n)
        k = heisenberg_generator(h)
        if noether_symmetry(h, h) != k or not lie_bracket(k, k).is_zero():
            return SuiteResult("noether", False, 1 + n, f"fails for H={h}")
    return SuiteResult("noether", True, 1 + cases)


@suite("noetherian")
def noetherian(max_n: int = 4, seed: int = 0, cases: int = 50) -> SuiteResult:
    rng = sampling.rng_of(seed)
    for n in range(cases):
        F, H = (sampling.hamiltonian(rng, 1, max_n) for _ in range(2))
        if not noetherian_identity_check(F, H).holds:
            return SuiteResult("noetherian", False, n, f"fails for F={F}, H={H}")
    return SuiteResult("noetherian", True, cases)


@suite("flow")
def flow(max_n: int = 5, seed: int = 0) -> SuiteResult:
    from .cli.parser import parse

    for text in ("P^2", "(P^2 + Q^2)/2", "P^2 + Q^4"):
        h = normal_form(parse(text.replace("/2", "*1/2")))
        s = flow_taylor(h, max_n)
        if s.ccr_residuals():
            return SuiteResult("flow", False, 0, f"CCR broken for {text}")
    return SuiteResult("flow", True, 3)


@suite("hall")
def hall(max_n: int = 0, seed: int = 0, trials: int = 100) -> SuiteResult:
    rng = sampling.rng_of(seed)
    p, q = hall_polynomials()
    letters = sorted(p.letters())
    for n in range(trials):
        a = Assignment({x: random_rational(rng, 2) for x in letters})
        if eval_free(p, a) != eval_free(q, a):
            return SuiteResult("hall", False, n, "Hall identity fails on 2x2")
    for _ in range(trials):
        a = Assignment({x: random_rational(rng, 3) for x in letters})
        if eval_free(p, a) != eval_free(q, a):
            return SuiteResult("hall", True, trials + 1)
    return SuiteResult("hall", False, trials, "no 3x3 witness found")


@suite("separate")
def separation(max_n: int = 6, seed: int = 0, cases: int = 50, attempts: int = 20) -> SuiteResult:
    rng = sampling.rng_of(seed)
    for n in range(cases):
        p = sampling.free_poly(rng, 1, max_n)
        q = sampling.free_poly(rng, 1, max_n)
        if p == q:
            continue
        if separate(p, q, rng, attempts) is None:
            d = max(p.degree(), q.degree())
            return SuiteResult("separate", False, n, f"no witness at dim {separation_dim(d)} for {p} vs {q}")
    return SuiteResult("separate", True, cases)


@suite("welldefined")
def welldefined(max_n: int = 3, seed: int = 0, cases: int = 100) -> SuiteResult:
    rng = sampling.rng_of(seed)
    for n in range(cases):
        k = sampling.vector_field(rng, 1, max_n)
        h = sampling.hamiltonian(rng, 1, max_n + 1)
        h_rep = lift(h) + ideal_sample(rng, 1, max_n)
        k_reps = [lift(c) + ideal_sample(rng, 1, max_n) for c in k.comps]
        if lie_derivative_of_representatives(h_rep, k_reps) != lie_derivative(k, h):
            return SuiteResult("welldefined", False, n, "Lie derivative depends on representatives")
        one = FreePoly.one(1)
        perturbed = [normal_form(fp_partial(h_rep, l, one)) for l in range(2)]
        if perturbed != grad_components(h):
            return SuiteResult("welldefined", False, n, "gradient depends on representatives")
    return SuiteResult("welldefined", True, cases)


@suite("confluence")
def confluence(max_n: int = 5, seed: int = 0, cases: int = 50) -> SuiteResult:
    rng = sampling.rng_of(seed)
    for n in range(cases):
        f = rng.choice([1, 2])
        p = sampling.free_poly(rng, f, max_n)
        expected = normal_form(p)
        for _ in range(3):
            if rewrite_normal_form(p, rng) != expected:
                return SuiteResult("confluence", False, n, f"rewrite order changes result for {p}")
    return SuiteResult("confluence", True, cases)


@suite("theta")
def theta_in_gamma(max_n: int = 5, seed: int = 0, cases: int = 200) -> SuiteResult:
    rng = sampling.rng_of(seed)
    for n in range(cases):
        h = sampling.hamiltonian(rng, 1, max_n)
        # theta_apply certifies membership on construction
        if theta_apply(grad(h)) != heisenberg_generator(h):
            return SuiteResult("theta", False, n, f"Theta dH differs from K for {h}")
    return SuiteResult("theta", True, cases)


def run_suite(name: str, max_n: int | None = None, seed: int = 0) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}")
    fn = SUITES[name]
    if max_n is None:
        return fn(seed=seed)
    return fn(max_n=max_n, seed=seed)
