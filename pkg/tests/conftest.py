from __future__ import annotations

import pytest
import sympy
from hypothesis import HealthCheck, settings

from dluroth.diffring import U, DiffVar, uvar, xvar
from dluroth.parser import parse_input, parse_poly
from dluroth.poly import SparsePoly

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

EXAMPLE_1 = "(u)/(u'); (u + u')"
EXAMPLE_2 = "(u'); (u + u'')"
SINGLE = "(u')"


def P(text: str) -> SparsePoly:
    """Polynomial in u from the input grammar."""
    return parse_poly(text)


def X(j: int, k: int = 0) -> SparsePoly:
    return SparsePoly.var(xvar(j, k))


def Uv(k: int = 0) -> SparsePoly:
    return SparsePoly.var(uvar(k))


def sym_name(v: DiffVar) -> str:
    kind = {U: "u", -1: "y", -2: "t"}.get(v.kind, f"x{v.kind}_")
    return f"{kind}{v.order}"


def to_sympy(p: SparsePoly):
    expr = sympy.Integer(0)
    for m, c in p.items():
        term = sympy.Rational(c.numerator, c.denominator) if not isinstance(c, int) else sympy.Integer(c)
        for v, e in m:
            term *= sympy.Symbol(sym_name(v)) ** e
        expr += term
    return sympy.expand(expr)


@pytest.fixture
def ex1():
    return parse_input(EXAMPLE_1)


@pytest.fixture
def ex2():
    return parse_input(EXAMPLE_2)


@pytest.fixture
def single():
    return parse_input(SINGLE)


# one line per acceptance criterion, printed at the end of the session
ACCEPTANCE: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
