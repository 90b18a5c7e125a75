"""The Weyl algebra: free polynomials modulo the canonical commutation relations.

Elements are stored in normal order: per degree of freedom all momenta to the
left of all positions, degrees of freedom in ascending order, i.e. the basis
``P_1^a1 Q_1^b1 P_2^a2 Q_2^b2 ...``.
"""

from __future__ import annotations

import random
from functools import lru_cache
from math import comb, factorial
from typing import Mapping, NamedTuple

from .free_algebra import DimensionMismatch, FreePoly, Generator, _accumulate
from .scalars import (
    Coefficient,
    Gaussian,
    I,
    I_HBAR,
    ONE_C,
    ZERO_C,
    i_hbar_power,
)


class NormalMonomial(NamedTuple):
    """``prod_k P_k**p_exp[k] * Q_k**q_exp[k]`` in normal order."""

    p_exp: tuple
    q_exp: tuple

    @classmethod
    def unit(cls, f: int) -> "NormalMonomial":
        return cls((0,) * f, (0,) * f)

    def degree(self) -> int:
        return sum(self.p_exp) + sum(self.q_exp)

    def word(self) -> tuple:
        f = len(self.p_exp)
        letters = []
        for k in range(f):
            letters.extend([f + k] * self.p_exp[k])
            letters.extend([k] * self.q_exp[k])
        return tuple(letters)


_I_POW = [Gaussian(1), I, Gaussian(-1), Gaussian(0, -1)]


@lru_cache(maxsize=1 << 16)
def _dof_product(a: int, b: int, c: int, d: int) -> tuple:
    """(P^a Q^b)(P^c Q^d) = sum_r C(b,r) C(c,r) r! (i hbar)^r P^(a+c-r) Q^(b+d-r)."""
    return tuple(
        (a + c - r, b + d - r, r, comb(b, r) * comb(c, r) * factorial(r))
        for r in range(min(b, c) + 1)
    )


@lru_cache(maxsize=1 << 16)
def monomial_product(m1: NormalMonomial, m2: NormalMonomial) -> tuple:
    """Normal-ordered expansion of ``m1 * m2``.

    Returns ``((monomial, r, n), ...)`` meaning ``n * (i hbar)**r * monomial``.
    """
    f = len(m1.p_exp)
    partial = [((), (), 0, 1)]
    for k in range(f):
        options = _dof_product(m1.p_exp[k], m1.q_exp[k], m2.p_exp[k], m2.q_exp[k])
        partial = [
            (ps + (pa,), qs + (qb,), r + dr, n * dn)
            for ps, qs, r, n in partial
            for pa, qb, dr, dn in options
        ]
    return tuple((NormalMonomial(ps, qs), r, n) for ps, qs, r, n in partial)


class WeylElement:
    """An element of the Weyl algebra in its canonical normal form."""

    __slots__ = ("f", "_terms", "_hash")

    def __init__(self, f: int, terms: Mapping | None = None):
        self.f = f
        clean: dict = {}
        if terms:
            for m, c in terms.items():
                m = NormalMonomial(tuple(m[0]), tuple(m[1]))
                if len(m.p_exp) != f or len(m.q_exp) != f:
                    raise DimensionMismatch(f"monomial {m} does not match f={f}")
                if any(e < 0 for e in m.p_exp + m.q_exp):
                    raise ValueError("negative exponent")
                _accumulate(clean, [(m, Coefficient.coerce(c))])
        self._terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, f: int, terms: dict) -> "WeylElement":
        x = object.__new__(cls)
        x.f = f
        x._terms = terms
        x._hash = None
        return x

    @classmethod
    def zero(cls, f: int) -> "WeylElement":
        return cls._raw(f, {})

    @classmethod
    def const(cls, f: int, c) -> "WeylElement":
        c = Coefficient.coerce(c)
        return cls._raw(f, {NormalMonomial.unit(f): c} if c else {})

    @classmethod
    def one(cls, f: int) -> "WeylElement":
        return cls.const(f, 1)

    @classmethod
    def gen(cls, f: int, kind: str, dof: int = 1) -> "WeylElement":
        Generator(kind, dof).index(f)
        p = [0] * f
        q = [0] * f
        (p if kind == "P" else q)[dof - 1] = 1
        return cls._raw(f, {NormalMonomial(tuple(p), tuple(q)): ONE_C})

    @classmethod
    def Q(cls, f: int = 1, dof: int = 1) -> "WeylElement":
        return cls.gen(f, "Q", dof)

    @classmethod
    def P(cls, f: int = 1, dof: int = 1) -> "WeylElement":
        return cls.gen(f, "P", dof)

    @classmethod
    def monomial(cls, p_exp, q_exp, c=1) -> "WeylElement":
        return cls(len(p_exp), {(tuple(p_exp), tuple(q_exp)): c})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: (kv[0].degree(), kv[0].word()))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree of the normal form; -1 for zero."""
        return max((m.degree() for m in self._terms), default=-1)

    def min_hbar(self):
        return min((c.min_hbar() for c in self._terms.values()), default=None)

    def coefficient(self, m) -> Coefficient:
        return self._terms.get(NormalMonomial(tuple(m[0]), tuple(m[1])), ZERO_C)

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.f == other.f and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.f, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        from .cli.printer import format_weyl

        return f"WeylElement(f={self.f}, {format_weyl(self)!r})"

    def __str__(self):
        from .cli.printer import format_weyl

        return format_weyl(self)

    def _coerce(self, other):
        if isinstance(other, WeylElement):
            if other.f != self.f:
                raise DimensionMismatch(f"f={self.f} vs f={other.f}")
            return other
        if isinstance(other, (int, Gaussian, Coefficient)) or _is_fraction(other):
            return WeylElement.const(self.f, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        _accumulate(out, other._terms.items())
        return WeylElement._raw(self.f, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement._raw(self.f, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            if other.f != self.f:
                raise DimensionMismatch(f"f={self.f} vs f={other.f}")
            out: dict = {}
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    c12 = c1 * c2
                    for m, r, n in monomial_product(m1, m2):
                        c = c12.shift(r, _I_POW[r % 4] * n) if r or n != 1 else c12
                        prev = out.get(m)
                        out[m] = c if prev is None else prev + c
            return WeylElement._raw(self.f, {m: c for m, c in out.items() if c})
        if isinstance(other, (int, Gaussian, Coefficient)) or _is_fraction(other):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Gaussian, Coefficient)) or _is_fraction(other):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "WeylElement":
        c = Coefficient.coerce(c)
        out = {}
        for m, v in self._terms.items():
            x = v * c
            if x:
                out[m] = x
        return WeylElement._raw(self.f, out)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = WeylElement.one(self.f)
        for _ in range(n):
            result = result * self
        return result

    def map_coefficients(self, fn) -> "WeylElement":
        return WeylElement(self.f, {m: fn(c) for m, c in self._terms.items()})

    def at_hbar_zero(self) -> "WeylElement":
        """Drop every term with a positive hbar power (classical limit).

        Raises if a negative power is present.
        """
        out = {}
        for m, c in self._terms.items():
            if c.min_hbar() < 0:
                raise ZeroDivisionError("negative hbar power at hbar = 0")
            g = c.terms.get(0)
            if g:
                out[m] = Coefficient.coerce(g)
        return WeylElement._raw(self.f, out)


def _is_fraction(x) -> bool:
    from fractions import Fraction

    return isinstance(x, Fraction)


def _letter_monomial(x: int, f: int) -> NormalMonomial:
    p = [0] * f
    q = [0] * f
    if x < f:
        q[x] = 1
    else:
        p[x - f] = 1
    return NormalMonomial(tuple(p), tuple(q))


@lru_cache(maxsize=1 << 15)
def _word_normal_form(word: tuple, f: int) -> tuple:
    if not word:
        return ((NormalMonomial.unit(f), ONE_C),)
    head = WeylElement._raw(f, dict(_word_normal_form(word[:-1], f)))
    last = WeylElement._raw(f, {_letter_monomial(word[-1], f): ONE_C})
    return tuple((head * last)._terms.items())


def normal_form(p: FreePoly) -> WeylElement:
    """The canonical normal-ordered representative of ``p`` modulo the CCR."""
    out: dict = {}
    for word, c in p._terms.items():
        for m, wc in _word_normal_form(word, p.f):
            x = wc * c if wc != ONE_C else c
            prev = out.get(m)
            out[m] = x if prev is None else prev + x
    return WeylElement._raw(p.f, {m: c for m, c in out.items() if c})


def lift(x: WeylElement) -> FreePoly:
    """The normal-ordered free polynomial representing ``x``."""
    return FreePoly._raw(x.f, {m.word(): c for m, c in x._terms.items()})


def _rank(x: int, f: int) -> tuple:
    # P_k sorts before Q_k, lower dof first
    return (x, 1) if x < f else (x - f, 0)


def _violations(word: tuple, f: int) -> list[int]:
    return [
        n
        for n in range(len(word) - 1)
        if _rank(word[n], f) > _rank(word[n + 1], f)
    ]


def rewrite_normal_form(p: FreePoly, rng: random.Random | None = None) -> WeylElement:
    """Normal form by explicit single-swap rewriting.

    Rules: ``Q_k P_k -> P_k Q_k + i hbar``; any other out-of-order adjacent
    pair is swapped. Without ``rng`` the leftmost violation of the first
    pending word is rewritten; with ``rng`` both the word and the position
    are chosen at random. This is slow and exists as an oracle for
    :func:`normal_form`.
    """
    f = p.f
    pending = dict(p._terms)
    done: dict = {}
    while pending:
        if rng is None:
            word = next(iter(pending))
        else:
            word = rng.choice(list(pending))
        c = pending.pop(word)
        bad = _violations(word, f)
        if not bad:
            _accumulate(done, [(word, c)])
            continue
        n = bad[0] if rng is None else rng.choice(bad)
        x, y = word[n], word[n + 1]
        swapped = word[:n] + (y, x) + word[n + 2:]
        new = [(swapped, c)]
        if x < f and y == x + f:
            new.append((word[:n] + word[n + 2:], c * I_HBAR))
        for w, v in new:
            _accumulate(pending if _violations(w, f) else done, [(w, v)])
    out = {}
    for word, c in done.items():
        if not c:
            continue
        p_exp = [0] * f
        q_exp = [0] * f
        for x in word:
            if x < f:
                q_exp[x] += 1
            else:
                p_exp[x - f] += 1
        out[NormalMonomial(tuple(p_exp), tuple(q_exp))] = c
    return WeylElement._raw(f, out)


def w_arith(op: str, a: WeylElement, b=None) -> WeylElement:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    if op == "neg":
        return -a
    raise ValueError(f"unknown operation {op!r}")


def commutator(a: WeylElement, b: WeylElement) -> WeylElement:
    """``a*b - b*a`` in the quotient."""
    return a * b - b * a


def closed_commutator(n: int, m: int) -> WeylElement:
    """``Q^n P^m - P^m Q^n`` (one degree of freedom) from the binomial formula."""
    if n < 0 or m < 0:
        raise ValueError("exponents must be nonnegative")
    terms = {}
    for r in range(1, min(n, m) + 1):
        c = i_hbar_power(r).shift(0, Gaussian(comb(m, r) * comb(n, r) * factorial(r)))
        terms[NormalMonomial((m - r,), (n - r,))] = c
    return WeylElement._raw(1, terms)


def hbar_check(x: WeylElement, min_degree: int) -> bool:
    """True iff every coefficient of ``x`` has lowest hbar power >= ``min_degree``."""
    return all(c.min_hbar() >= min_degree for c in x._terms.values())


def divide_by_hbar(x: WeylElement, power: int = 1) -> WeylElement:
    return WeylElement._raw(x.f, {m: c.shift(-power) for m, c in x._terms.items()})


def ideal_generators(f: int) -> list[FreePoly]:
    """Generators of the CCR ideal for ``f`` degrees of freedom."""
    gens = []
    for k in range(f):
        for l in range(f):
            qk, ql = FreePoly.Q(f, k + 1), FreePoly.Q(f, l + 1)
            pk, pl = FreePoly.P(f, k + 1), FreePoly.P(f, l + 1)
            if k < l:
                gens.append(qk * ql - ql * qk)
                gens.append(pk * pl - pl * pk)
            g = qk * pl - pl * qk
            if k == l:
                g = g - FreePoly.const(f, I_HBAR)
            gens.append(g)
    return gens


def _random_word(rng: random.Random, f: int, max_len: int) -> tuple:
    n = rng.randint(0, max_len)
    return tuple(rng.randrange(2 * f) for _ in range(n))


def _random_gaussian(rng: random.Random, bound: int = 9) -> Gaussian:
    from fractions import Fraction

    def rat():
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    g = Gaussian(rat(), rat())
    return g if g else Gaussian(1)


def ideal_sample(
    seed,
    f: int,
    max_degree: int,
    terms: int = 3,
    generator: FreePoly | None = None,
) -> FreePoly:
    """A random element ``sum_k c_k p_k g_k q_k`` of the CCR ideal.

    ``p_k``, ``q_k`` are random words whose combined length is at most
    ``max_degree``; ``g_k`` is drawn from :func:`ideal_generators` unless a
    fixed ``generator`` is given.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if f == 0:
        return FreePoly.zero(0)
    gens = [generator] if generator is not None else ideal_generators(f)
    out = FreePoly.zero(f)
    for _ in range(terms):
        g = rng.choice(gens)
        budget = max(max_degree, 0)
        left = _random_word(rng, f, budget)
        right = _random_word(rng, f, budget - len(left))
        piece = FreePoly.monomial(f, left) * g * FreePoly.monomial(f, right)
        out = out + piece.scale(_random_gaussian(rng))
    return out
