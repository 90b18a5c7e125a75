import json
from fractions import Fraction

import pytest

from weylham import FreePoly, WeylElement, dumps, loads, normal_form, parse, print_canonical
from weylham import sampling
from weylham.cli.main import run
from weylham.cli.parser import DofOutOfRange, ParseError, parse_ast, max_dof
from weylham.scalars import Coefficient, I_HBAR, Gaussian


def cli(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


# parsing and printing


def test_parse_basic(Q, P):
    assert parse("Q*P") == Q * P
    assert parse("Q P") == Q * P
    assert parse("[Q, P]") == Q * P - P * Q
    assert parse("(Q + P)^2") == (Q + P) * (Q + P)
    assert parse("-3/2*i*hbar*Q") == Q.scale(Coefficient({1: Gaussian(0, -1) * Gaussian(3) / 2}))


def test_parse_negative_hbar_power():
    assert parse("hbar^-2") == FreePoly.const(1, Coefficient({-2: 1}))


def test_parse_infers_dof():
    p = parse("Q_2 P_1")
    assert p.f == 2
    assert max_dof(parse_ast("P_3 + 1")) == 3
    with pytest.raises(DofOutOfRange):
        parse("Q_3", 2)


@pytest.mark.parametrize("text", ["Q +", "Q^", "(Q", "[Q P]", "Q $ P", "2^-1", ""])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as err:
        parse("Q + $")
    assert err.value.pos == 4


def test_printing_examples(Q, P):
    x = normal_form(Q * Q * P * P)
    assert print_canonical(x) == "P^2*Q^2 + 4*i*hbar*P*Q - 2*hbar^2"
    assert print_canonical(FreePoly.zero(1)) == "0"
    assert print_canonical(FreePoly.const(1, Coefficient({-1: 1}))) == "hbar^-1"
    assert print_canonical(Q * P - P * Q) == "Q*P - P*Q"
    assert print_canonical(FreePoly.Q(2, 2)) == "Q_2"


def test_tuple_printing(wQ, wP):
    assert print_canonical((2 * wP, -4 * wQ**3)) == "(2*P, -4*Q^3)"


def random_element(rng):
    f = rng.choice([1, 1, 2, 3])
    if rng.random() < 0.5:
        return sampling.free_poly(rng, f, 4, n_terms=5, hbar_range=(-2, 3))
    return sampling.weyl_element(rng, f, 4, n_terms=5, hbar_range=(-2, 3))


def test_text_and_json_round_trips():
    rng = sampling.rng_of(12345)
    for _ in range(500):
        x = random_element(rng)
        text = print_canonical(x)
        back = parse(text, x.f)
        if isinstance(x, WeylElement):
            back = normal_form(back)
        assert back == x, text
        assert print_canonical(back) == text
        blob = dumps(x)
        y = loads(blob)
        assert y == x and type(y) is type(x)
        assert dumps(y) == blob


def test_json_shape(Q, P):
    data = json.loads(dumps(Q * P.scale(Gaussian(0, 1))))
    assert data == {
        "kind": "free",
        "f": 1,
        "terms": [{"coeff": [{"hpow": 0, "re": "0/1", "im": "1/1"}], "word": ["Q1", "P1"]}],
    }
    weyl = json.loads(dumps(normal_form(Q * P)))
    assert weyl["kind"] == "weyl"
    assert weyl["terms"][0]["word"] == {"p_exp": [1], "q_exp": [1]}


def test_json_vector_round_trip(wQ, wP):
    from weylham import heisenberg_generator

    k = heisenberg_generator(wP**2 + wQ**4)
    assert loads(dumps(k)) == k
    t = (wP, I_HBAR * wQ)
    assert loads(dumps(t)) == t


# subcommands


def test_normalize(capsys):
    assert cli(capsys, "normalize", "Q*P") == (0, "P*Q + i*hbar", "")
    code, out, _ = cli(capsys, "normalize", "Q_1 P_2 - P_2 Q_1", "--dof", "2")
    assert (code, out) == (0, "0")


def test_normalize_json(capsys):
    code, out, _ = cli(capsys, "normalize", "Q", "--format", "json")
    assert code == 0
    assert loads(json.dumps(json.loads(out)["result"])) == WeylElement.Q()


def test_eq(capsys):
    assert cli(capsys, "eq", "2 Q P Q", "Q^2 P + P Q^2")[:2] == (0, "true")
    code, out, _ = cli(capsys, "eq", "2 Q P Q", "Q^2 P + P Q^2", "--free")
    assert code == 1 and out.startswith("false")


def test_commutator(capsys):
    assert cli(capsys, "commutator", "Q^2", "P")[:2] == (0, "2*i*hbar*Q")


def test_derivative(capsys):
    assert cli(capsys, "derivative", "P^2", "0", "1")[:2] == (0, "2*P")
    assert cli(capsys, "derivative", "Q^2", "P", "0", "--normalize")[:2] == (0, "2*P*Q + i*hbar")
    assert cli(capsys, "derivative", "Q^2", "P")[0] == 2


def test_grad_theta_heisenberg(capsys):
    assert cli(capsys, "grad", "Q P + P Q")[:2] == (0, "(2*P, 2*Q)")
    assert cli(capsys, "theta", "Q")[:2] == (0, "(0, -1)")
    assert cli(capsys, "heisenberg", "P^2 + Q^4")[:2] == (0, "(2*P, -4*Q^3)")


def test_poisson(capsys):
    assert cli(capsys, "poisson", "Q", "P")[:2] == (0, "-1")


def test_is_vector_field(capsys):
    assert cli(capsys, "is-vector-field", "1", "0")[:2] == (0, "true")
    code, out, _ = cli(capsys, "is-vector-field", "Q", "0")
    assert code == 1 and out.splitlines() == ["false", "QP k=1 l=1: i*hbar"]
    assert cli(capsys, "is-vector-field", "Q")[0] == 2


def test_lie_bracket(capsys):
    assert cli(capsys, "lie-bracket", "1", "0", "0", "1")[:2] == (0, "(0, 0)")
    code, _, err = cli(capsys, "lie-bracket", "Q", "0", "0", "1")
    assert code == 1 and "membership" in err


def test_conserved(capsys):
    args = ("Q_1 P_2 - Q_2 P_1", "P_1^2 + P_2^2", "--dof", "2")
    assert cli(capsys, "conserved", *args)[:2] == (0, "true")
    code, out, _ = cli(capsys, "conserved", "Q", "P^2")
    assert code == 1 and out.splitlines() == ["false", "2*P"]


def test_noether(capsys):
    code, out, _ = cli(capsys, "noether", "P_1^2 + P_2^2", "Q_1 P_2 - Q_2 P_1", "--dof", "2")
    assert (code, out) == (0, "(-Q_2, Q_1, -P_2, P_1)")
    code, out, _ = cli(capsys, "noether", "P^2", "Q")
    assert code == 1 and out == "not conserved: 2*P"


def test_noetherian_check(capsys):
    code, out, _ = cli(capsys, "noetherian-check", "P^2", "Q^2")
    assert code == 0
    assert out.splitlines() == ["true", "lhs (4*Q, -4*P)", "rhs (4*Q, -4*P)"]


def test_flow_taylor(capsys):
    code, out, _ = cli(capsys, "flow-taylor", "P^2", "--order", "2")
    assert code == 0 and out.splitlines() == ["c1 = (2*P, 0)", "c2 = (0, 0)"]
    code, out, _ = cli(capsys, "flow-taylor", "P^2 + Q^2", "--order", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["order"] == 3 and data["ccr_residuals"] == 0
    assert cli(capsys, "flow-taylor", "P", "--order", "0")[0] == 2


def test_eval_matrix(capsys):
    assign = json.dumps({"Q": [[0, 1], [0, 0]], "P": [[0, 0], [1, 0]]})
    code, out, _ = cli(capsys, "eval-matrix", "Q P - P Q", "--assign", assign)
    assert (code, out.splitlines()) == (0, ["1 0", "0 -1"])
    code, out, _ = cli(capsys, "eval-matrix", "hbar", "--assign", assign, "--hbar", "3")
    assert out.splitlines() == ["3 0", "0 3"]
    assert cli(capsys, "eval-matrix", "Q", "--assign", "{bad")[0] == 2


def test_separate(capsys):
    code, out, _ = cli(capsys, "separate", "Q P", "P Q", "--format", "json")
    data = json.loads(out)
    assert code == 0 and set(data["result"]["matrices"]) == {"Q", "P"}
    assert cli(capsys, "separate", "Q", "Q")[:2] == (1, "none")


def test_hall_demo(capsys):
    code, out, _ = cli(capsys, "hall-demo")
    assert code == 0 and out.splitlines()[-1].startswith("identity holds")


def test_verify(capsys):
    code, out, _ = cli(capsys, "verify", "lemVertrel", "--max", "4")
    assert code == 0 and out == "PASS lemVertrel: 25 cases"
    assert cli(capsys, "verify", "nosuch")[0] == 2


def test_usage_errors(capsys):
    assert cli(capsys, "normalize", "Q +")[0] == 2
    assert cli(capsys, "normalize", "Q_2", "--dof", "1")[0] == 2
    assert cli(capsys, "frobnicate")[0] == 2
    assert cli(capsys)[0] == 2


def test_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("Q P\n"))
    assert cli(capsys, "normalize", "-")[:2] == (0, "P*Q + i*hbar")


def test_more_parse_and_print(Q, P):
    from weylham import closed_commutator

    assert parse("Q*P - P*Q - i*hbar") == Q * P - P * Q - FreePoly.const(1, I_HBAR)
    assert parse("P^2 + Q^4") == P * P + Q**4
    assert print_canonical(closed_commutator(2, 2)) == "4*i*hbar*P*Q - 2*hbar^2"
    assert print_canonical(FreePoly.const(1, Gaussian(Fraction(-3, 4), Fraction(1, 2)))) == "-3/4 + 1/2*i"
