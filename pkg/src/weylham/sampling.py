"""Seeded random elements for property checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .fields import VectorField
from .free_algebra import FreePoly
from .scalars import Coefficient, Gaussian
from .weyl import NormalMonomial, WeylElement


def rng_of(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def gaussian(rng: random.Random, bound: int = 9, real: bool = False) -> Gaussian:
    """Nonzero Gaussian rational with numerators in [-bound, bound], denominators in [1, bound]."""
    while True:
        re = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        im = Fraction(0) if real else Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        g = Gaussian(re, im)
        if g:
            return g


def coefficient(rng: random.Random, hbar_range=(0, 0), real: bool = False) -> Coefficient:
    lo, hi = hbar_range
    terms = {rng.randint(lo, hi): gaussian(rng, real=real) for _ in range(rng.randint(1, 2))}
    return Coefficient(terms)


def free_poly(
    rng: random.Random, f: int = 1, max_degree: int = 4, n_terms: int = 4, hbar_range=(0, 0)
) -> FreePoly:
    terms = {}
    for _ in range(rng.randint(1, n_terms)):
        d = rng.randint(0, max_degree)
        w = tuple(rng.randrange(2 * f) for _ in range(d))
        terms[w] = coefficient(rng, hbar_range)
    return FreePoly(f, terms)


def normal_monomial(rng: random.Random, f: int, max_degree: int) -> NormalMonomial:
    d = rng.randint(0, max_degree)
    exps = [0] * (2 * f)
    for _ in range(d):
        exps[rng.randrange(2 * f)] += 1
    return NormalMonomial(tuple(exps[:f]), tuple(exps[f:]))


def weyl_element(
    rng: random.Random, f: int = 1, max_degree: int = 4, n_terms: int = 4,
    hbar_range=(0, 0), real: bool = False,
) -> WeylElement:
    terms = {}
    for _ in range(rng.randint(1, n_terms)):
        terms[normal_monomial(rng, f, max_degree)] = coefficient(rng, hbar_range, real)
    return WeylElement(f, terms)


def hamiltonian(rng: random.Random, f: int = 1, max_degree: int = 4, n_terms: int = 3) -> WeylElement:
    """An hbar-free random scalar field."""
    return weyl_element(rng, f, max_degree, n_terms)


def vector_field(rng: random.Random, f: int = 1, max_degree: int = 3) -> VectorField:
    """Heisenberg generator of a random Hamiltonian plus a random constant field.

    Membership holds by construction, no rejection sampling needed.
    """
    from .hamiltonian import heisenberg_generator

    h = hamiltonian(rng, f, max_degree + 1)
    k = heisenberg_generator(h)
    consts = [WeylElement.const(f, gaussian(rng)) if rng.random() < 0.5 else WeylElement.zero(f)
              for _ in range(2 * f)]
    return VectorField([a + b for a, b in zip(k.comps, consts)])
