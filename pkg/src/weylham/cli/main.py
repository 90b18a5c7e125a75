"""Command-line entry point.

Exit codes: 0 success / property true, 1 property false, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from ..fields import NotAVectorField, VectorField, is_vector_field, lie_bracket
from ..free_algebra import ArityError, DimensionMismatch, FreePoly, Generator, fp_derivative
from ..hamiltonian import (
    PreconditionViolated,
    flow_taylor,
    grad,
    grad_components,
    heisenberg_generator,
    is_conserved,
    noether_symmetry,
    noetherian_identity_check,
    poisson_bracket,
    theta_apply,
)
from ..matrix_eval import Assignment, ExactMatrix, eval_free, hall_polynomials, separate
from ..scalars import Gaussian
from ..verify import SUITES, run_suite
from ..weyl import WeylElement, commutator, normal_form
from .parser import DofOutOfRange, ParseError, parse
from .printer import print_canonical, to_json


class UsageError(Exception):
    pass


def _read(text: str) -> str:
    return sys.stdin.read().strip() if text == "-" else text


def _free(args, text: str) -> FreePoly:
    return parse(_read(text), args.dof)


def _weyl(args, text: str) -> WeylElement:
    return normal_form(_free(args, text))


def _emit(args, value, label: str | None = None, extra: dict | None = None):
    if args.format == "json":
        payload = {"result": to_json(value) if value is not None else None}
        if extra:
            payload.update(extra)
        print(json.dumps(payload, separators=(",", ":")))
    else:
        if value is not None:
            print(print_canonical(value))
        if label:
            print(label)


def _emit_bool(args, ok: bool, residual=None) -> int:
    if args.format == "json":
        payload = {"result": ok}
        if residual is not None:
            payload["residual"] = to_json(residual)
        print(json.dumps(payload, separators=(",", ":")))
    else:
        print("true" if ok else "false")
        if residual is not None and not ok:
            print(print_canonical(residual))
    return 0 if ok else 1


def _components(args, texts, what="vector field") -> list[WeylElement]:
    if len(texts) != 2 * args.dof:
        raise UsageError(f"a {what} needs {2 * args.dof} components for --dof {args.dof}")
    return [_weyl(args, t) for t in texts]


# subcommands


def cmd_normalize(args):
    _emit(args, _weyl(args, args.expr))
    return 0


def cmd_eq(args):
    a, b = _free(args, args.a), _free(args, args.b)
    if args.free:
        return _emit_bool(args, a == b, None if a == b else a - b)
    diff = normal_form(a - b)
    return _emit_bool(args, not diff, diff if diff else None)


def cmd_commutator(args):
    _emit(args, commutator(_weyl(args, args.a), _weyl(args, args.b)))
    return 0


def cmd_derivative(args):
    p = _free(args, args.expr)
    dirs = [_free(args, t) for t in args.directions]
    if len(dirs) != 2 * args.dof:
        raise UsageError(f"need {2 * args.dof} directions")
    d = fp_derivative(p, dirs)
    _emit(args, normal_form(d) if args.normalize else d)
    return 0


def cmd_grad(args):
    _emit(args, tuple(grad_components(_weyl(args, args.expr))))
    return 0


def cmd_theta(args):
    _emit(args, theta_apply(grad(_weyl(args, args.expr))))
    return 0


def cmd_heisenberg(args):
    _emit(args, heisenberg_generator(_weyl(args, args.expr)))
    return 0


def cmd_poisson(args):
    _emit(args, poisson_bracket(_weyl(args, args.F), _weyl(args, args.H)))
    return 0


def cmd_is_vector_field(args):
    comps = _components(args, args.comps)
    ok, report = is_vector_field(comps)
    if args.format == "json":
        print(json.dumps({
            "result": ok,
            "violations": [
                {"identity": v.identity, "k": v.k, "l": v.l, "residual": to_json(v.residual)}
                for v in report
            ],
        }, separators=(",", ":")))
    else:
        print("true" if ok else "false")
        for v in report:
            print(f"{v.identity} k={v.k} l={v.l}: {print_canonical(v.residual)}")
    return 0 if ok else 1


def cmd_lie_bracket(args):
    n = 2 * args.dof
    if len(args.comps) != 2 * n:
        raise UsageError(f"need {n} components for K followed by {n} for G")
    comps = _components(args, args.comps[:n]), _components(args, args.comps[n:])
    k, g = VectorField(comps[0]), VectorField(comps[1])
    _emit(args, lie_bracket(k, g))
    return 0


def cmd_conserved(args):
    i, h = _weyl(args, args.I), _weyl(args, args.H)
    k = heisenberg_generator(h)
    ok = is_conserved(i, k)
    residual = None if ok else grad(i)(k)
    return _emit_bool(args, ok, residual)


def cmd_noether(args):
    h, i = _weyl(args, args.H), _weyl(args, args.I)
    try:
        g = noether_symmetry(h, i)
    except PreconditionViolated as e:
        if args.format == "json":
            print(json.dumps({"result": None, "residual": to_json(e.residual)}, separators=(",", ":")))
        else:
            print(f"not conserved: {print_canonical(e.residual)}")
        return 1
    _emit(args, g)
    return 0


def cmd_noetherian_check(args):
    res = noetherian_identity_check(_weyl(args, args.F), _weyl(args, args.H))
    if args.format == "json":
        print(json.dumps({
            "result": res.holds, "lhs": to_json(res.lhs), "rhs": to_json(res.rhs),
        }, separators=(",", ":")))
    else:
        print("true" if res.holds else "false")
        print("lhs " + print_canonical(res.lhs))
        print("rhs " + print_canonical(res.rhs))
    return 0 if res.holds else 1


def cmd_flow_taylor(args):
    s = flow_taylor(_weyl(args, args.H), args.order)
    if args.format == "json":
        print(json.dumps({
            "order": s.order,
            "coefficients": [to_json(tuple(c)) for c in s.coefficients],
            "ccr_residuals": len(s.ccr_residuals()),
        }, separators=(",", ":")))
    else:
        for j, c in enumerate(s.coefficients, start=1):
            print(f"c{j} = {print_canonical(tuple(c))}")
    return 0


def _matrix(data) -> ExactMatrix:
    return ExactMatrix([[_number(x) for x in row] for row in data])


def _number(x) -> Gaussian:
    if isinstance(x, list):
        return Gaussian(Fraction(x[0]), Fraction(x[1]))
    if isinstance(x, float):
        raise UsageError("matrix entries must be integers or 'a/b' strings")
    return Gaussian(Fraction(x))


def _letter(name: str, f: int) -> int:
    name = name.replace("_", "")
    kind, dof = name[0], int(name[1:] or 1)
    return Generator(kind, dof).index(f)


def cmd_eval_matrix(args):
    try:
        data = json.loads(_read(args.assign))
    except json.JSONDecodeError as e:
        raise UsageError(f"bad --assign JSON: {e}") from None
    mats = {_letter(k, args.dof): _matrix(v) for k, v in data.items()}
    a = Assignment(mats, _number(args.hbar))
    m = eval_free(_free(args, args.expr), a)
    rows = [[_fmt_gauss(x) for x in row] for row in m.tolist()]
    if args.format == "json":
        print(json.dumps({"result": rows}, separators=(",", ":")))
    else:
        for row in rows:
            print(" ".join(row))
    return 0


def _fmt_gauss(g: Gaussian) -> str:
    if not g.im:
        return str(g.re)
    return f"{g.re}+{g.im}i" if g.im > 0 else f"{g.re}{g.im}i"


def _assignment_json(a: Assignment, f: int) -> dict:
    return {
        "hbar": _fmt_gauss(a.hbar_value),
        "matrices": {
            Generator.from_index(x, f).name(f): [[_fmt_gauss(v) for v in row] for row in m.tolist()]
            for x, m in sorted(a.matrices.items())
        },
    }


def cmd_separate(args):
    p, q = _free(args, args.a), _free(args, args.b)
    w = separate(p, q, args.seed, args.attempts)
    if args.format == "json":
        print(json.dumps({"result": None if w is None else _assignment_json(w, args.dof)},
                         separators=(",", ":")))
    elif w is None:
        print("none")
    else:
        print(json.dumps(_assignment_json(w, args.dof)))
    return 0 if w is not None else 1


def cmd_hall_demo(args):
    from ..verify import hall

    res = hall(seed=args.seed, trials=args.attempts)
    p, q = hall_polynomials()
    if args.format == "json":
        print(json.dumps({"result": res.passed, "checked": res.checked, "detail": res.detail},
                         separators=(",", ":")))
    else:
        print(f"p = {print_canonical(p)}")
        print(f"q = {print_canonical(q)}")
        print("identity holds on 2x2, 3x3 witness found" if res.passed else f"failed: {res.detail}")
    return 0 if res.passed else 1


def cmd_verify(args):
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(sorted(SUITES))}")
    res = run_suite(args.suite, args.max, args.seed)
    if args.format == "json":
        print(json.dumps({"suite": res.name, "result": res.passed, "checked": res.checked,
                          "detail": res.detail}, separators=(",", ":")))
    else:
        status = "PASS" if res.passed else "FAIL"
        print(f"{status} {res.name}: {res.checked} cases" + (f" ({res.detail})" if res.detail else ""))
    return 0 if res.passed else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dof", type=int, default=1, help="degrees of freedom f")
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="weylham", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, *positionals, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        for pos in positionals:
            if isinstance(pos, tuple):
                sp.add_argument(pos[0], nargs=pos[1])
            else:
                sp.add_argument(pos)
        sp.set_defaults(func=fn)
        return sp

    add("normalize", cmd_normalize, "expr", help="normal-ordered form")
    sp = add("eq", cmd_eq, "a", "b", help="equality modulo the CCR")
    sp.add_argument("--free", action="store_true", help="compare in the free algebra instead")
    add("commutator", cmd_commutator, "a", "b")
    sp = add("derivative", cmd_derivative, "expr", ("directions", "+"))
    sp.add_argument("--normalize", action="store_true")
    add("grad", cmd_grad, "expr")
    add("theta", cmd_theta, "expr")
    add("heisenberg", cmd_heisenberg, "expr")
    add("poisson", cmd_poisson, "F", "H")
    add("is-vector-field", cmd_is_vector_field, ("comps", "+"))
    add("lie-bracket", cmd_lie_bracket, ("comps", "+"))
    add("conserved", cmd_conserved, "I", "H")
    add("noether", cmd_noether, "H", "I")
    add("noetherian-check", cmd_noetherian_check, "F", "H")
    sp = add("flow-taylor", cmd_flow_taylor, "H")
    sp.add_argument("--order", type=int, default=3)
    sp = add("eval-matrix", cmd_eval_matrix, "expr")
    sp.add_argument("--assign", required=True, help='JSON like {"Q": [[0,1],[0,0]], "P": ...}')
    sp.add_argument("--hbar", default="1")
    sp = add("separate", cmd_separate, "a", "b")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--attempts", type=int, default=20)
    sp = add("hall-demo", cmd_hall_demo)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--attempts", type=int, default=100)
    sp = add("verify", cmd_verify, "suite")
    sp.add_argument("--max", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.dof < 0:
        print("error: --dof must be nonnegative", file=sys.stderr)
        return 2
    if getattr(args, "order", 1) < 1:
        print("error: --order must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (ParseError, DofOutOfRange, UsageError, ArityError, DimensionMismatch) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except NotAVectorField as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
