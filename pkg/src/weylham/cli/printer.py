"""Canonical text and JSON forms for free polynomials and Weyl elements."""

from __future__ import annotations

import json
from fractions import Fraction

from ..free_algebra import FreePoly, Generator
from ..scalars import Coefficient, Gaussian
from ..weyl import NormalMonomial, WeylElement


def _print_order(word: tuple):
    # higher degree first, then ascending letter order
    return (-len(word), word)


def _letters(word: tuple, f: int) -> list[str]:
    out = []
    n = 0
    while n < len(word):
        x = word[n]
        run = 1
        while n + run < len(word) and word[n + run] == x:
            run += 1
        name = Generator.from_index(x, f).name(f)
        out.append(name if run == 1 else f"{name}^{run}")
        n += run
    return out


def _atoms(word: tuple, coeff: Coefficient, f: int):
    """Yield ``(signed rational, is_imaginary, text factors)`` per printed term."""
    letters = _letters(word, f)
    for k, g in coeff.items():
        h = [] if k == 0 else ["hbar" if k == 1 else f"hbar^{k}"]
        if g.re:
            yield g.re, [] + h + letters
        if g.im:
            yield g.im, ["i"] + h + letters


def _format_terms(f: int, items) -> str:
    pieces = []
    for word, coeff in sorted(items, key=lambda kv: _print_order(kv[0])):
        for r, factors in _atoms(word, coeff, f):
            mag = abs(r)
            if mag != 1 or not factors:
                factors = [str(mag)] + factors
            body = "*".join(factors)
            if not pieces:
                pieces.append(("-" if r < 0 else "") + body)
            else:
                pieces.append((" - " if r < 0 else " + ") + body)
    return "".join(pieces) if pieces else "0"


def format_free(p: FreePoly) -> str:
    return _format_terms(p.f, p._terms.items())


def format_weyl(x: WeylElement) -> str:
    return _format_terms(x.f, ((m.word(), c) for m, c in x._terms.items()))


def print_canonical(x) -> str:
    """Deterministic text form of a FreePoly, WeylElement or tuple of them."""
    if isinstance(x, FreePoly):
        return format_free(x)
    if isinstance(x, WeylElement):
        return format_weyl(x)
    if hasattr(x, "comps"):
        x = x.comps
    if isinstance(x, (tuple, list)):
        return "(" + ", ".join(print_canonical(c) for c in x) + ")"
    raise TypeError(f"cannot print {type(x).__name__}")


# JSON


def _rat(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def coeff_to_json(c: Coefficient) -> list:
    return [{"hpow": k, "re": _rat(g.re), "im": _rat(g.im)} for k, g in c.items()]


def coeff_from_json(data) -> Coefficient:
    return Coefficient(
        {int(e["hpow"]): Gaussian(Fraction(e["re"]), Fraction(e["im"])) for e in data}
    )


def to_json(x) -> dict:
    """JSON-ready dict; exact rationals are encoded as ``"a/b"`` strings."""
    if isinstance(x, FreePoly):
        terms = [
            {
                "coeff": coeff_to_json(c),
                "word": [str(Generator.from_index(l, x.f)).replace("_", "") for l in w],
            }
            for w, c in sorted(x._terms.items(), key=lambda kv: _print_order(kv[0]))
        ]
        return {"kind": "free", "f": x.f, "terms": terms}
    if isinstance(x, WeylElement):
        terms = [
            {
                "coeff": coeff_to_json(c),
                "word": {"p_exp": list(m.p_exp), "q_exp": list(m.q_exp)},
            }
            for m, c in sorted(x._terms.items(), key=lambda kv: _print_order(kv[0].word()))
        ]
        return {"kind": "weyl", "f": x.f, "terms": terms}
    if hasattr(x, "comps"):
        return {"kind": "vector", "f": x.f, "comps": [to_json(c) for c in x.comps]}
    if isinstance(x, (tuple, list)):
        return {"kind": "tuple", "items": [to_json(c) for c in x]}
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _parse_letter(name: str, f: int) -> int:
    kind, dof = name[0], int(name[1:])
    return Generator(kind, dof).index(f)


def from_json(data: dict):
    kind = data.get("kind")
    f = data.get("f")
    if kind is None:
        terms = data["terms"]
        kind = "weyl" if terms and isinstance(terms[0]["word"], dict) else "free"
    if kind == "free":
        return FreePoly(
            f,
            {
                tuple(_parse_letter(n, f) for n in t["word"]): coeff_from_json(t["coeff"])
                for t in data["terms"]
            },
        )
    if kind == "weyl":
        return WeylElement(
            f,
            {
                NormalMonomial(tuple(t["word"]["p_exp"]), tuple(t["word"]["q_exp"])):
                coeff_from_json(t["coeff"])
                for t in data["terms"]
            },
        )
    if kind == "vector":
        from ..fields import VectorField

        return VectorField([from_json(c) for c in data["comps"]])
    if kind == "tuple":
        return tuple(from_json(c) for c in data["items"])
    raise ValueError(f"unknown JSON kind {kind!r}")


def dumps(x) -> str:
    return json.dumps(to_json(x), separators=(",", ":"))


def loads(text: str):
    return from_json(json.loads(text))
