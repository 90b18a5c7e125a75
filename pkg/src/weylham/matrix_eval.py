"""Exact evaluation of free polynomials on Gaussian-rational matrices.

Used for polynomial identity testing: two distinct polynomials of degree d
are separated by suitable symmetric matrices of size d//2 + 1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .free_algebra import DimensionMismatch, FreePoly
from .scalars import Gaussian


class MissingGenerator(KeyError):
    pass


class ExactMatrix:
    """Square matrix of :class:`Gaussian` entries (a numpy object array)."""

    __slots__ = ("a",)

    def __init__(self, entries):
        a = np.array(
            [[Gaussian.coerce(x) for x in row] for row in entries], dtype=object
        ) if not isinstance(entries, np.ndarray) else entries
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("matrix must be square")
        self.a = a

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls.scalar(n, 1)

    @classmethod
    def scalar(cls, n: int, c) -> "ExactMatrix":
        c = Gaussian.coerce(c)
        z = Gaussian(0)
        return cls([[c if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int) -> "ExactMatrix":
        return cls.scalar(n, 0)

    @property
    def dim(self) -> int:
        return self.a.shape[0]

    @property
    def symmetric(self) -> bool:
        return bool(np.all(self.a == self.a.T))

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.dim == other.dim and bool(np.all(self.a == other.a))

    def __hash__(self):
        return hash(tuple(self.a.flat))

    def _check(self, other):
        if self.dim != other.dim:
            raise DimensionMismatch(f"dim {self.dim} vs {other.dim}")

    def __add__(self, other):
        self._check(other)
        return ExactMatrix(self.a + other.a)

    def __sub__(self, other):
        self._check(other)
        return ExactMatrix(self.a - other.a)

    def __neg__(self):
        return ExactMatrix(-self.a)

    def __matmul__(self, other):
        self._check(other)
        return ExactMatrix(self.a.dot(other.a))

    def scale(self, c) -> "ExactMatrix":
        c = Gaussian.coerce(c)
        return ExactMatrix(self.a * c)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.a.T.copy())

    def is_zero(self) -> bool:
        return not any(bool(x) for x in self.a.flat)

    def max_abs(self) -> float:
        return max((abs(x) for x in self.a.flat), default=0.0)

    def tolist(self) -> list:
        return [list(row) for row in self.a]

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.a)
        return f"ExactMatrix([{rows}])"


@dataclass
class Assignment:
    """Matrices for generator letters plus a numeric value for hbar."""

    matrices: Mapping[int, ExactMatrix]
    hbar_value: Gaussian = field(default_factory=lambda: Gaussian(1))

    def __post_init__(self):
        self.matrices = dict(self.matrices)
        self.hbar_value = Gaussian.coerce(self.hbar_value)
        dims = {m.dim for m in self.matrices.values()}
        if len(dims) > 1:
            raise DimensionMismatch("assignment matrices must share one dimension")

    @property
    def dim(self) -> int:
        return next(iter(self.matrices.values())).dim if self.matrices else 1

    def __getitem__(self, letter: int) -> ExactMatrix:
        try:
            return self.matrices[letter]
        except KeyError:
            raise MissingGenerator(f"no matrix assigned to letter {letter}") from None


def _eval_word(word: tuple, a: Assignment, n: int) -> ExactMatrix:
    result = None
    for x in word:
        m = a[x]
        result = m if result is None else result @ m
    return ExactMatrix.identity(n) if result is None else result


def eval_free(p: FreePoly, a: Assignment, dim: int | None = None) -> ExactMatrix:
    """Substitute matrices for letters and ``a.hbar_value`` for hbar."""
    n = a.dim if dim is None else dim
    if a.matrices and n != a.dim:
        raise DimensionMismatch(f"dim {n} vs assignment dim {a.dim}")
    for x in p.letters():
        a[x]
    out = ExactMatrix.zeros(n)
    for word, c in p._terms.items():
        out = out + _eval_word(word, a, n).scale(c.at_hbar(a.hbar_value))
    return out


def eval_derivative(p: FreePoly, a: Assignment, directions: Mapping[int, ExactMatrix]) -> ExactMatrix:
    """Matrix value of ``p'(A)[V]``: each occurrence replaced in turn by its direction."""
    n = a.dim
    for m in directions.values():
        if m.dim != n:
            raise DimensionMismatch("directions must share the assignment dimension")
    zero = ExactMatrix.zeros(n)
    out = zero
    for word, c in p._terms.items():
        s = c.at_hbar(a.hbar_value)
        for k, x in enumerate(word):
            v = directions.get(x, zero)
            if v.is_zero():
                continue
            term = _eval_word(word[:k], a, n) @ v @ _eval_word(word[k + 1:], a, n)
            out = out + term.scale(s)
    return out


def random_symmetric(rng: random.Random, n: int, bound: int = 9) -> ExactMatrix:
    """``(M + M^T)/2`` for an integer matrix M with entries in [-bound, bound]."""
    m = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
    half = Fraction(1, 2)
    return ExactMatrix(
        [[Gaussian(half * (m[i][j] + m[j][i])) for j in range(n)] for i in range(n)]
    )


def random_rational(rng: random.Random, n: int, bound: int = 9) -> ExactMatrix:
    return ExactMatrix(
        [
            [Gaussian(Fraction(rng.randint(-bound, bound), rng.randint(1, bound))) for _ in range(n)]
            for _ in range(n)
        ]
    )


def separation_dim(degree: int) -> int:
    return degree // 2 + 1


def separate(
    p: FreePoly, q: FreePoly, seed=0, attempts: int = 20, dim: int | None = None
) -> Assignment | None:
    """Search for symmetric matrices on which ``p`` and ``q`` differ.

    The matrix size defaults to ``d//2 + 1`` with ``d`` the larger degree.
    hbar is sampled as a nonzero integer alongside the matrices. Returns
    None if ``p == q`` or the attempt budget runs out.
    """
    if p.f != q.f:
        raise DimensionMismatch(f"f={p.f} vs f={q.f}")
    if p == q:
        return None
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    diff = p - q
    n = separation_dim(max(p.degree(), q.degree(), 0)) if dim is None else dim
    letters = sorted(diff.letters())
    for _ in range(attempts):
        a = Assignment(
            {x: random_symmetric(rng, n) for x in letters},
            Gaussian(rng.choice([1, 2, 3, -1, -2])),
        )
        if not eval_free(diff, a, n).is_zero():
            return a
    return None


def hall_polynomials(f: int = 2) -> tuple[FreePoly, FreePoly]:
    """``(XY - YX)^2 Z`` and ``Z (XY - YX)^2`` with X=Q_1, Y=Q_2, Z=P_1."""
    x, y, z = FreePoly.Q(f, 1), FreePoly.Q(f, 2), FreePoly.P(f, 1)
    c = x * y - y * x
    return c * c * z, z * c * c
