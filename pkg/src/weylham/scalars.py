"""Exact scalars: Gaussian rationals and Laurent polynomials in hbar."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Union

RationalLike = Union[int, Fraction, str]


class Gaussian:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)
        self._hash = None

    @classmethod
    def coerce(cls, x) -> "Gaussian":
        if isinstance(x, Gaussian):
            return x
        if isinstance(x, complex):
            raise TypeError("floating point complex values are not exact")
        if isinstance(x, float):
            raise TypeError("floating point values are not exact")
        return cls(x)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if not isinstance(other, Gaussian):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.re, self.im))
        return self._hash

    def __add__(self, other):
        other = _gauss_or_none(other)
        if other is None:
            return NotImplemented
        return Gaussian(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _gauss_or_none(other)
        if other is None:
            return NotImplemented
        return Gaussian(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _gauss_or_none(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __mul__(self, other):
        other = _gauss_or_none(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return Gaussian(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self) -> "Gaussian":
        return Gaussian(self.re, -self.im)

    def inverse(self) -> "Gaussian":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero")
        return Gaussian(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = _gauss_or_none(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _gauss_or_none(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = Gaussian(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __abs__(self) -> float:
        return abs(complex(float(self.re), float(self.im)))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if not self.im:
            return f"Gaussian({str(self.re)!r})"
        return f"Gaussian({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        return f"({self.re} + {self.im}*i)"


def _gauss_or_none(x):
    if isinstance(x, Gaussian):
        return x
    if isinstance(x, (int, Fraction)):
        return Gaussian(x)
    return None


I = Gaussian(0, 1)
ONE = Gaussian(1)


class Coefficient:
    """Finite Laurent polynomial in hbar with Gaussian-rational coefficients.

    ``terms`` maps an hbar exponent (possibly negative) to a nonzero
    :class:`Gaussian`. Instances are immutable and hashable.
    """

    __slots__ = ("_terms", "_key")

    def __init__(self, terms=None):
        if terms is None:
            self._terms = {}
        elif isinstance(terms, Coefficient):
            self._terms = terms._terms
        else:
            clean = {}
            for k, v in dict(terms).items():
                v = Gaussian.coerce(v)
                if v:
                    clean[int(k)] = v
            self._terms = clean
        self._key = None

    @classmethod
    def _raw(cls, terms: dict) -> "Coefficient":
        # terms already canonical (no zero values)
        c = object.__new__(cls)
        c._terms = terms
        c._key = None
        return c

    @classmethod
    def coerce(cls, x) -> "Coefficient":
        if isinstance(x, Coefficient):
            return x
        g = Gaussian.coerce(x)
        return cls._raw({0: g} if g else {})

    @classmethod
    def hbar(cls, power: int = 1, scalar=1) -> "Coefficient":
        g = Gaussian.coerce(scalar)
        return cls._raw({power: g} if g else {})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> Iterator:
        return iter(sorted(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _sort_key(self):
        if self._key is None:
            self._key = tuple(sorted(self._terms.items(), key=lambda kv: kv[0]))
        return self._key

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Gaussian)):
            other = Coefficient.coerce(other)
        if not isinstance(other, Coefficient):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._sort_key())

    def __add__(self, other):
        other = _coeff_or_none(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Coefficient._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Coefficient._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = _coeff_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coeff_or_none(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coeff_or_none(other)
        if other is None:
            return NotImplemented
        out: dict = {}
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                k = k1 + k2
                s = out.get(k)
                p = v1 * v2
                out[k] = p if s is None else s + p
        return Coefficient._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def shift(self, power: int, scalar: Gaussian = ONE) -> "Coefficient":
        """Multiply by ``scalar * hbar**power``."""
        if not scalar:
            return Coefficient._raw({})
        if scalar == ONE:
            return Coefficient._raw({k + power: v for k, v in self._terms.items()})
        return Coefficient._raw(
            {k + power: v * scalar for k, v in self._terms.items()}
        )

    def min_hbar(self):
        """Lowest hbar exponent, or None for zero."""
        return min(self._terms) if self._terms else None

    def max_hbar(self):
        return max(self._terms) if self._terms else None

    def at_hbar(self, value) -> Gaussian:
        """Substitute a number for hbar."""
        value = Gaussian.coerce(value)
        total = Gaussian(0)
        for k, v in self._terms.items():
            if k < 0 and not value:
                raise ZeroDivisionError("negative hbar power evaluated at hbar = 0")
            total = total + v * value**k
        return total

    def is_scalar(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def __repr__(self):
        return f"Coefficient({dict(self._sort_key())!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, v in self._sort_key():
            if k == 0:
                parts.append(str(v))
            elif k == 1:
                parts.append(f"{v}*hbar")
            else:
                parts.append(f"{v}*hbar^{k}")
        return " + ".join(parts)


def _coeff_or_none(x):
    if isinstance(x, Coefficient):
        return x
    if isinstance(x, (int, Fraction, Gaussian)):
        return Coefficient.coerce(x)
    return None


ZERO_C = Coefficient()
ONE_C = Coefficient.coerce(1)
I_HBAR = Coefficient.hbar(1, I)


def i_hbar_power(r: int) -> Coefficient:
    """(i*hbar)**r."""
    return Coefficient.hbar(r, I**r)


def sum_coefficients(cs: Iterable[Coefficient]) -> Coefficient:
    total = ZERO_C
    for c in cs:
        total = total + c
    return total
