import json
from fractions import Fraction
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dluroth import cli, pipeline
from dluroth.errors import DegenerateInputError, InputSyntaxError
from dluroth.implicitize import MinimalPolynomial
from dluroth.instances import random_instance
from dluroth.parser import parse_input, parse_pairs, parse_poly, render_input
from dluroth.diffring import uvar
from dluroth.poly import SparsePoly, render
from dluroth.prolongation import GeneratorInput
from dluroth.rng import CounterRNG

from conftest import EXAMPLE_1, EXAMPLE_2, P, X
from strategies import polys

SCHEMA = json.loads(resources.files("dluroth").joinpath("output.schema.json").read_text())


def run_cli(capsys, *argv):
    rc = cli.main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


# parser

def test_parse_examples():
    g1 = parse_input(EXAMPLE_1)
    assert (g1.n, g1.d, g1.e) == (2, 1, 1)
    assert g1.pairs[0] == (P("u"), P("u'")) and g1.pairs[1] == (P("u + u'"), P("1"))
    g2 = parse_input(EXAMPLE_2)
    assert (g2.n, g2.d, g2.e) == (2, 1, 2)


def test_parse_notation_variants():
    assert parse_poly("u^(2)") == parse_poly("u''")
    assert parse_poly("u^(0)") == parse_poly("u")
    assert parse_poly("u'^2") == parse_poly("u' * u'")
    assert parse_poly("-3/4*u + 1/2") == SparsePoly.var(uvar(0)).scale(Fraction(-3, 4)) + Fraction(1, 2)
    assert parse_poly("(u + 1)^2") == P("u^2 + 2*u + 1")
    assert parse_poly("2*(u - u')") == P("2*u - 2*u'")
    assert len(parse_pairs("(u); (u');")) == 2
    assert len(parse_pairs("(u)\n;\n(u'')")) == 2


def test_auto_reduction_flag():
    g = parse_input("(u^2 - u)/(u*u'); (u')")
    assert g.pairs[0] == (P("u - 1"), P("u'"))
    assert g.auto_reduced == (True, False)


@pytest.mark.parametrize("text, line, col", [
    ("(u", 1, 3),
    ("(u) (u')", 1, 5),
    ("(u +)", 1, 5),
    ("(u)\n; (x)", 2, 4),
    ("(u^(3)", 1, 7),
    ("", 1, 1),
    ("(u^99)", 1, 3),
])
def test_syntax_errors_carry_position(text, line, col):
    with pytest.raises(InputSyntaxError) as info:
        parse_input(text)
    assert (info.value.line, info.value.column) == (line, col)
    assert f"line {line}, column {col}" in str(info.value)


@pytest.mark.parametrize("text, message", [
    ("(u)/(0)", "zero denominator"),
    ("(u)/(2*u)", "constant generator"),
    ("(u^2 + 1)/(u)", "e = 0"),
    ("(3)", "constant generator"),
])
def test_degenerate_inputs(text, message):
    with pytest.raises(DegenerateInputError, match=message):
        parse_input(text)


@given(polys(nvars=3, max_deg=3, max_terms=4, nonzero=True),
       polys(nvars=3, max_deg=2, max_terms=3, nonzero=True))
def test_render_parse_round_trip(p, q):
    assert parse_poly(render(p)) == p
    try:
        gens = GeneratorInput.from_pairs([(p, q), (P("u'"), P("1"))])
    except DegenerateInputError:
        return
    again = parse_input(render_input(gens))
    assert again.pairs == gens.pairs


# random instances

@given(st.integers(1, 3), st.integers(1, 2), st.integers(1, 2), st.integers(0, 2 ** 32))
def test_random_instance_invariants(n, d, e, seed):
    inst = random_instance(n, d, e, CounterRNG(seed))
    g = inst.gens
    assert g.n == n and g.e == e and g.d <= d
    assert GeneratorInput.from_pairs(g.pairs).pairs == g.pairs
    assert random_instance(n, d, e, CounterRNG(seed)).gens.pairs == g.pairs


def test_random_instance_rejects_bad_bounds():
    with pytest.raises(ValueError):
        random_instance(0, 1, 1, CounterRNG(0))


# CLI

def test_cli_example1_text(capsys):
    rc, out, err = run_cli(capsys, "-e", EXAMPLE_1, "--seed", "3")
    assert rc == 0 and err == ""
    assert "M = x1*x2 - u*x1 - u" in out
    assert "basis: Z = {x1, x2, x1'}, U = {}, k0 = 0" in out
    assert "verified: yes" in out


def test_cli_json_validates(capsys):
    rc, out, _ = run_cli(capsys, "-e", EXAMPLE_2, "--json", "--seed", "9")
    assert rc == 0
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert doc["basis"] == {"Z": ["x1", "x2", "x1'", "x2'", "x2''"], "U": [], "k0": 0}
    assert doc["verified"] is True and doc["stats"]["seconds"] is None
    assert doc["profile"]["ranks"] == [1, 2, 4]


def test_cli_json_validates_on_random_inputs(capsys):
    rng = CounterRNG(77)
    for i in range(5):
        text = render_input(random_instance(rng.randint(1, 2), 1, 1, rng).gens)
        rc, out, _ = run_cli(capsys, "-e", text, "--json", "--timing", "--paranoid")
        assert rc == 0
        doc = json.loads(out)
        jsonschema.validate(doc, SCHEMA)
        assert isinstance(doc["stats"]["seconds"], float)


def test_cli_deterministic(capsys):
    outs = {run_cli(capsys, "-e", EXAMPLE_1, "--json", "--seed", "11")[1] for _ in range(2)}
    assert len(outs) == 1
    other = run_cli(capsys, "-e", EXAMPLE_1, "--json", "--seed", "12")[1]
    assert other != outs.pop()


def test_cli_file_input(tmp_path, capsys):
    f = tmp_path / "gens.txt"
    f.write_text(EXAMPLE_2 + "\n", encoding="utf-8")
    rc, out, _ = run_cli(capsys, str(f))
    assert rc == 0 and "M = x1' - x2 + u" in out


def test_cli_stdin_subprocess():
    proc = subprocess.run([sys.executable, "-m", "dluroth", "--json"], input="(u')",
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["M"] == "u' - x1"


@pytest.mark.parametrize("argv, code", [
    (["-e", "(u"], 2),
    (["-e", "(u)/(0)"], 3),
    (["-e", "(u^2)"], 3),
    (["-e", EXAMPLE_1, "--max-degree", "1"], 4),
    (["-e", EXAMPLE_1, "--attempts", "0"], 2),
    (["-e", EXAMPLE_1, "--seed", "-1"], 2),
    (["-e", EXAMPLE_1, "--oracle", "magic"], 2),
    (["/nonexistent/file"], 2),
])
def test_cli_exit_codes(capsys, argv, code):
    rc = None
    try:
        rc = cli.main(argv)
    except SystemExit as exc:
        rc = exc.code
    _, err = capsys.readouterr()
    assert rc == code
    assert err.strip()


def test_cli_oracle_agreement(capsys):
    rc, out, _ = run_cli(capsys, "-e", EXAMPLE_1, "--oracle", "groebner", "--json")
    assert rc == 0 and json.loads(out)["oracle"] == "groebner: agrees"


def test_cli_oracle_disagreement_exit_5(capsys, monkeypatch):
    def wrong(sys_, basis, time_limit=None):
        return MinimalPolynomial(X(1) + 1, (), 1, 0, 1, False)

    monkeypatch.setattr(pipeline, "eliminate_groebner", wrong)
    rc, _, err = run_cli(capsys, "-e", EXAMPLE_1, "--oracle", "groebner")
    assert rc == 5 and "oracle disagreement" in err


def test_cli_no_verify(capsys):
    rc, out, _ = run_cli(capsys, "-e", EXAMPLE_1, "--no-verify", "--json")
    doc = json.loads(out)
    assert rc == 0 and doc["verified"] is False and doc["gamma"] is None
