"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*'? factor)*
    factor := atom ('^' nat)?          (hbar also accepts '^-' nat)
    atom   := 'Q' ('_' nat)? | 'P' ('_' nat)? | 'hbar' | 'i' | rational
            | '(' expr ')' | '[' expr ',' expr ']'

Juxtaposition and ``*`` both mean the noncommutative product; ``[a,b]``
expands to ``a*b - b*a``. Unsubscripted Q and P refer to dof 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..free_algebra import FreePoly, Generator
from ..scalars import Coefficient, I


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class DofOutOfRange(ValueError):
    pass


# AST


@dataclass(frozen=True)
class Sym:
    kind: str  # "Q", "P", "hbar", "i"
    dof: int = 1


@dataclass(frozen=True)
class Rational:
    value: Fraction


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, node)


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Power:
    base: "Node"
    exp: int


@dataclass(frozen=True)
class Bracket:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Group:
    inner: "Node"


Node = Union[Sym, Rational, Sum, Product, Power, Bracket, Group]

_TOKEN = re.compile(
    r"(?:(?P<num>\d+)|(?P<hbar>hbar)|(?P<sym>[QP])(?:_(?P<dof>\d+))?"
    r"|(?P<i>i)|(?P<op>[-+*^/(),\[\]]))"
)


def _tokenize(text: str) -> list[tuple]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = pos
        if m.group("num") is not None:
            tokens.append(("num", int(m.group("num")), start))
        elif m.group("hbar") is not None:
            tokens.append(("hbar", None, start))
        elif m.group("sym") is not None:
            dof = m.group("dof")
            tokens.append(("sym", (m.group("sym"), int(dof) if dof else 1), start))
        elif m.group("i") is not None:
            tokens.append(("i", None, start))
        else:
            tokens.append((m.group("op"), None, start))
        pos = m.end()
    tokens.append(("eof", None, n))
    return tokens


_ATOM_START = {"num", "hbar", "sym", "i", "(", "["}


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> Node:
        terms = []
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        terms.append((sign, self.term()))
        while self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def term(self) -> Node:
        factors = [self.factor()]
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                factors.append(self.factor())
            elif kind in _ATOM_START:
                factors.append(self.factor())
            else:
                break
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self) -> Node:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            neg = False
            if self.peek()[0] == "-":
                tok = self.take()
                if base != Sym("hbar"):
                    raise ParseError("negative exponents are only allowed on hbar", tok[2])
                neg = True
            exp = self.take("num")[1]
            return Power(base, -exp if neg else exp)
        return base

    def atom(self) -> Node:
        kind, value, pos = self.take()
        if kind == "num":
            num = value
            if self.peek()[0] == "/":
                self.take()
                den_tok = self.take("num")
                if den_tok[1] == 0:
                    raise ParseError("zero denominator", den_tok[2])
                return Rational(Fraction(num, den_tok[1]))
            return Rational(Fraction(num))
        if kind == "hbar":
            return Sym("hbar")
        if kind == "i":
            return Sym("i")
        if kind == "sym":
            letter, dof = value
            if dof < 1:
                raise ParseError("dof index starts at 1", pos)
            return Sym(letter, dof)
        if kind == "(":
            inner = self.expr()
            self.take(")")
            return Group(inner)
        if kind == "[":
            left = self.expr()
            self.take(",")
            right = self.expr()
            self.take("]")
            return Bracket(left, right)
        raise ParseError(f"unexpected token {kind!r}", pos)


def parse_ast(text: str) -> Node:
    p = _Parser(text)
    if p.peek()[0] == "eof":
        raise ParseError("empty expression", 0)
    node = p.expr()
    tok = p.peek()
    if tok[0] != "eof":
        raise ParseError(f"unexpected token {tok[0]!r}", tok[2])
    return node


def max_dof(node: Node) -> int:
    if isinstance(node, Sym):
        return node.dof if node.kind in ("Q", "P") else 0
    if isinstance(node, Rational):
        return 0
    if isinstance(node, Sum):
        return max(max_dof(t) for _, t in node.terms)
    if isinstance(node, Product):
        return max(max_dof(t) for t in node.factors)
    if isinstance(node, Power):
        return max_dof(node.base)
    if isinstance(node, Bracket):
        return max(max_dof(node.left), max_dof(node.right))
    return max_dof(node.inner)


def lower(node: Node, f: int) -> FreePoly:
    if isinstance(node, Sym):
        if node.kind == "hbar":
            return FreePoly.const(f, Coefficient.hbar(1))
        if node.kind == "i":
            return FreePoly.const(f, I)
        if node.dof > f:
            raise DofOutOfRange(f"{node.kind}_{node.dof} exceeds declared dof f={f}")
        return FreePoly.gen(f, Generator(node.kind, node.dof))
    if isinstance(node, Rational):
        return FreePoly.const(f, node.value)
    if isinstance(node, Sum):
        out = FreePoly.zero(f)
        for sign, t in node.terms:
            v = lower(t, f)
            out = out + v if sign > 0 else out - v
        return out
    if isinstance(node, Product):
        out = FreePoly.one(f)
        for t in node.factors:
            out = out * lower(t, f)
        return out
    if isinstance(node, Power):
        if node.exp < 0:
            return FreePoly.const(f, Coefficient.hbar(node.exp))
        return lower(node.base, f) ** node.exp
    if isinstance(node, Bracket):
        a, b = lower(node.left, f), lower(node.right, f)
        return a * b - b * a
    return lower(node.inner, f)


def parse(text: str, f: int | None = None) -> FreePoly:
    """Parse ``text`` into a free polynomial over ``f`` degrees of freedom.

    With ``f=None`` the dimension is the largest dof index used (at least 1).
    """
    node = parse_ast(text)
    if f is None:
        f = max(1, max_dof(node))
    return lower(node, f)
