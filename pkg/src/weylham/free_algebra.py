"""The free noncommutative algebra over Q_1..Q_f, P_1..P_f.

Words are tuples of generator indices. For a system with ``f`` degrees of
freedom, ``Q_k`` has index ``k - 1`` and ``P_k`` has index ``f + k - 1``;
this is also the letter order used for sorting (Q_1 < ... < Q_f < P_1 < ...).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence, Union

from .scalars import Coefficient, Gaussian, ONE_C, ZERO_C

Word = tuple


class DimensionMismatch(ValueError):
    pass


class ArityError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Generator:
    """One canonical symbol: ``kind`` is ``"Q"`` or ``"P"``, ``dof`` starts at 1."""

    kind: str
    dof: int = 1

    def __post_init__(self):
        if self.kind not in ("Q", "P"):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.dof < 1:
            raise ValueError("dof index starts at 1")

    def index(self, f: int) -> int:
        if self.dof > f:
            raise DimensionMismatch(f"{self} does not exist for f={f}")
        return self.dof - 1 if self.kind == "Q" else f + self.dof - 1

    @classmethod
    def from_index(cls, idx: int, f: int) -> "Generator":
        if not 0 <= idx < 2 * f:
            raise DimensionMismatch(f"generator index {idx} out of range for f={f}")
        if idx < f:
            return cls("Q", idx + 1)
        return cls("P", idx - f + 1)

    def name(self, f: int = 1) -> str:
        return self.kind if f == 1 else f"{self.kind}_{self.dof}"

    def __str__(self):
        return f"{self.kind}_{self.dof}"


def word_key(word: Word):
    """Graded lexicographic key: length first, then letter indices."""
    return (len(word), word)


class FreePoly:
    """Element of the free algebra: a sparse map ``word -> Coefficient``."""

    __slots__ = ("f", "_terms", "_hash")

    def __init__(self, f: int, terms: Mapping[Word, object] | None = None):
        if f < 0:
            raise ValueError("f must be nonnegative")
        self.f = f
        clean = {}
        if terms:
            n = 2 * f
            for w, c in terms.items():
                w = tuple(w)
                for x in w:
                    if not 0 <= x < n:
                        raise DimensionMismatch(
                            f"letter {x} out of range for f={f}"
                        )
                c = Coefficient.coerce(c)
                if c:
                    prev = clean.get(w)
                    c = c if prev is None else prev + c
                    if c:
                        clean[w] = c
                    else:
                        del clean[w]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, f: int, terms: dict) -> "FreePoly":
        p = object.__new__(cls)
        p.f = f
        p._terms = terms
        p._hash = None
        return p

    # constructors

    @classmethod
    def zero(cls, f: int) -> "FreePoly":
        return cls._raw(f, {})

    @classmethod
    def const(cls, f: int, c) -> "FreePoly":
        c = Coefficient.coerce(c)
        return cls._raw(f, {(): c} if c else {})

    @classmethod
    def one(cls, f: int) -> "FreePoly":
        return cls.const(f, 1)

    @classmethod
    def gen(cls, f: int, g: Union[Generator, str], dof: int = 1) -> "FreePoly":
        if isinstance(g, str):
            g = Generator(g, dof)
        return cls._raw(f, {(g.index(f),): ONE_C})

    @classmethod
    def Q(cls, f: int = 1, dof: int = 1) -> "FreePoly":
        return cls.gen(f, Generator("Q", dof))

    @classmethod
    def P(cls, f: int = 1, dof: int = 1) -> "FreePoly":
        return cls.gen(f, Generator("P", dof))

    @classmethod
    def monomial(cls, f: int, word: Word, c=1) -> "FreePoly":
        return cls(f, {tuple(word): c})

    # inspection

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: word_key(kv[0]))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Maximum word length; -1 for the zero polynomial."""
        return max((len(w) for w in self._terms), default=-1)

    def coefficient(self, word: Word) -> Coefficient:
        return self._terms.get(tuple(word), ZERO_C)

    def letters(self) -> set:
        return {x for w in self._terms for x in w}

    def __eq__(self, other):
        if not isinstance(other, FreePoly):
            return NotImplemented
        return self.f == other.f and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.f, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        from .cli.printer import format_free

        return f"FreePoly(f={self.f}, {format_free(self)!r})"

    def __str__(self):
        from .cli.printer import format_free

        return format_free(self)

    # arithmetic

    def _check(self, other: "FreePoly"):
        if self.f != other.f:
            raise DimensionMismatch(f"f={self.f} vs f={other.f}")

    def _coerce(self, other):
        if isinstance(other, FreePoly):
            self._check(other)
            return other
        if isinstance(other, (int, Gaussian, Coefficient)) or _is_fraction(other):
            return FreePoly.const(self.f, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        _accumulate(out, other._terms.items())
        return FreePoly._raw(self.f, out)

    __radd__ = __add__

    def __neg__(self):
        return FreePoly._raw(self.f, {w: -c for w, c in self._terms.items()})

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
        if isinstance(other, FreePoly):
            self._check(other)
            out: dict = {}
            for w1, c1 in self._terms.items():
                for w2, c2 in other._terms.items():
                    w = w1 + w2
                    c = c1 * c2
                    prev = out.get(w)
                    out[w] = c if prev is None else prev + c
            return FreePoly._raw(self.f, {w: c for w, c in out.items() if c})
        if isinstance(other, (int, Gaussian, Coefficient)) or _is_fraction(other):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Gaussian, Coefficient)) or _is_fraction(other):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "FreePoly":
        c = Coefficient.coerce(c)
        if not c:
            return FreePoly.zero(self.f)
        out = {}
        for w, v in self._terms.items():
            x = v * c
            if x:
                out[w] = x
        return FreePoly._raw(self.f, out)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = FreePoly.one(self.f)
        for _ in range(n):
            result = result * self
        return result

    def map_coefficients(self, fn) -> "FreePoly":
        return FreePoly(self.f, {w: fn(c) for w, c in self._terms.items()})


def _is_fraction(x) -> bool:
    from fractions import Fraction

    return isinstance(x, Fraction)


def _accumulate(out: dict, items):
    for w, c in items:
        prev = out.get(w)
        if prev is None:
            out[w] = c
        else:
            s = prev + c
            if s:
                out[w] = s
            else:
                del out[w]


def fp_arith(op: str, a: FreePoly, b=None) -> FreePoly:
    """Dispatch ``add``, ``sub``, ``mul``, ``scale`` or ``neg``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        if not isinstance(b, FreePoly):
            raise TypeError("mul takes two FreePoly operands")
        return a * b
    if op == "scale":
        if isinstance(b, FreePoly):
            raise TypeError("scale takes a coefficient")
        return a.scale(b)
    if op == "neg":
        return -a
    raise ValueError(f"unknown operation {op!r}")


def _letter(l, f: int) -> int:
    if isinstance(l, Generator):
        return l.index(f)
    if not 0 <= l < 2 * f:
        raise DimensionMismatch(f"generator index {l} out of range for f={f}")
    return l


def fp_partial(p: FreePoly, l, v: FreePoly) -> FreePoly:
    """Partial derivative of ``p`` in letter ``l`` applied to direction ``v``.

    Every occurrence of ``l`` in every word is replaced, one at a time, by
    ``v``; the results are summed.
    """
    if v.f != p.f:
        raise DimensionMismatch(f"f={p.f} vs f={v.f}")
    x = _letter(l, p.f)
    out: dict = {}
    vt = v._terms
    for w, c in p._terms.items():
        for n, y in enumerate(w):
            if y != x:
                continue
            pre, post = w[:n], w[n + 1:]
            _accumulate(
                out, ((pre + vw + post, c * vc) for vw, vc in vt.items())
            )
    return FreePoly._raw(p.f, {w: c for w, c in out.items() if c})


def _check_directions(p: FreePoly, directions: Sequence[FreePoly]):
    if len(directions) != 2 * p.f:
        raise ArityError(
            f"expected {2 * p.f} direction components, got {len(directions)}"
        )
    for d in directions:
        if d.f != p.f:
            raise DimensionMismatch(f"f={p.f} vs f={d.f}")


def fp_derivative(p: FreePoly, directions: Sequence[FreePoly]) -> FreePoly:
    """Directional derivative ``p'[V]``; ``directions`` is indexed by letter."""
    _check_directions(p, directions)
    out: dict = {}
    for w, c in p._terms.items():
        for n, y in enumerate(w):
            v = directions[y]
            if not v:
                continue
            pre, post = w[:n], w[n + 1:]
            _accumulate(out, ((pre + vw + post, c * vc) for vw, vc in v._terms.items()))
    return FreePoly._raw(p.f, {w: c for w, c in out.items() if c})


def fp_second_derivative(
    p: FreePoly, v: Sequence[FreePoly], w: Sequence[FreePoly]
) -> FreePoly:
    """``p''[V, W]``: two distinct occurrences replaced, one by V and one by W.

    The directions are held constant, so letters inside V are never
    differentiated by the second pass.
    """
    _check_directions(p, v)
    _check_directions(p, w)
    out: dict = {}
    for word, c in p._terms.items():
        d = len(word)
        for n in range(d):
            vn = v[word[n]]
            if not vn:
                continue
            for m in range(d):
                if m == n:
                    continue
                wm = w[word[m]]
                if not wm:
                    continue
                lo, hi = (n, m) if n < m else (m, n)
                first, second = (vn, wm) if n < m else (wm, vn)
                a, b, z = word[:lo], word[lo + 1:hi], word[hi + 1:]
                for fw, fc in first._terms.items():
                    for sw, sc in second._terms.items():
                        _accumulate(out, [(a + fw + b + sw + z, c * fc * sc)])
    return FreePoly._raw(p.f, {k: c for k, c in out.items() if c})


def _substitute_word(word: Word, values: Sequence[FreePoly], one: FreePoly) -> FreePoly:
    result = one
    for x in word:
        result = result * values[x]
    return result


def fp_compose(p: FreePoly, subs: Sequence[FreePoly]) -> FreePoly:
    """Substitute ``subs[j]`` for letter ``j`` of ``p``.

    The substituted values may live in a different dimension than ``p``.
    """
    if len(subs) != 2 * p.f:
        raise ArityError(f"expected {2 * p.f} substitutions, got {len(subs)}")
    if not subs:
        if not p:
            return FreePoly.zero(0)
        return FreePoly.const(0, p.coefficient(()))
    g = subs[0].f
    for s in subs:
        if s.f != g:
            raise DimensionMismatch("substituted values must share f")
    one = FreePoly.one(g)
    out = FreePoly.zero(g)
    for word, c in p._terms.items():
        out = out + _substitute_word(word, subs, one).scale(c)
    return out


def derivative_at(
    p: FreePoly, point: Sequence[FreePoly], directions: Sequence[FreePoly]
) -> FreePoly:
    """``p'(point)[directions]``: the derivative of ``p`` evaluated at a point.

    ``point`` and ``directions`` are polynomials in a common target dimension.
    """
    if len(point) != 2 * p.f or len(directions) != 2 * p.f:
        raise ArityError("point and directions need one entry per generator")
    if not point:
        return FreePoly.zero(0)
    g = point[0].f
    one = FreePoly.one(g)
    out = FreePoly.zero(g)
    for word, c in p._terms.items():
        for n, x in enumerate(word):
            term = (
                _substitute_word(word[:n], point, one)
                * directions[x]
                * _substitute_word(word[n + 1:], point, one)
            )
            out = out + term.scale(c)
    return out


def unit_directions(f: int) -> list[list[FreePoly]]:
    """For each generator, the direction vector that is 1 there and 0 elsewhere."""
    zero = FreePoly.zero(f)
    one = FreePoly.one(f)
    return [[one if j == l else zero for j in range(2 * f)] for l in range(2 * f)]


def generators(f: int) -> list[FreePoly]:
    """All generators as polynomials, in letter order."""
    return [FreePoly._raw(f, {(j,): ONE_C}) for j in range(2 * f)]
