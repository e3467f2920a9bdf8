import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from dluroth import _kernels_py, kernels
from dluroth.gcd import gcd_multivariate
from dluroth.linalg import (
    ExactMatrix,
    crt_pair,
    det_exact,
    nullspace_exact,
    nullspace_mod_p,
    primes_below,
    rank_exact,
    rational_reconstruct,
)
from dluroth.poly import SparsePoly, render

from conftest import P, Uv, X, to_sympy
from strategies import matrices, polys, rationals


# -- polynomials ------------------------------------------------------------

def test_zero_coefficients_are_dropped():
    p = P("u + u'") - P("u'")
    assert p == P("u")
    assert len(p) == 1
    assert (P("u") - P("u")).is_zero


def test_render_canonical_order():
    assert render(X(1) * X(2) - Uv() * X(1) - Uv()) == "x1*x2 - u*x1 - u"
    assert render(P("u^(3) + u''^2 - 1/2*u")) == "u''^2 + u^(3) - 1/2*u"
    assert render(SparsePoly.const(0)) == "0"
    assert render(X(1, 3) + X(2, 1)) == "x1^(3) + x2'"


def test_normalized_is_primitive_with_positive_lead():
    p = P("-4*u^2 + 6*u'")
    n = p.normalized()
    assert n == P("2*u^2 - 3*u'")
    assert P("1/2*u - 1/3").normalized() == P("3*u - 2")


def test_exact_division():
    a, b = P("u + 1"), P("u' - u")
    assert (a * b).exact_div(b) == a
    with pytest.raises(ArithmeticError):
        P("u^2 + 1").exact_div(P("u + 1"))


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) - b == a
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


@given(polys(), polys())
def test_product_matches_sympy(a, b):
    assert to_sympy(a * b) == sympy.expand(to_sympy(a) * to_sympy(b))


@given(rationals.filter(bool), rationals)
def test_rational_arithmetic_is_exact(a, b):
    assert (a + b) - b == a
    assert a * (1 / a) == 1
    assert Fraction(a).denominator > 0


# -- gcd --------------------------------------------------------------------

@pytest.mark.parametrize("a, b, g", [
    ("u^2", "u*u'", "u"),
    ("(u+1)^2", "(u+1)*u'", "u + 1"),
    ("2*u - 2", "u", "1"),
    ("6*u^2 - 6", "4*u + 4", "u + 1"),
    ("0", "-3*u' + 6", "u' - 2"),
])
def test_gcd_examples(a, b, g):
    assert gcd_multivariate(P(a), P(b)) == P(g)


def test_gcd_both_zero():
    with pytest.raises(ValueError):
        gcd_multivariate(P("0"), P("0"))


@given(polys(nonzero=True), polys(nonzero=True), polys(nonzero=True, max_terms=3))
def test_gcd_against_sympy(a, b, c):
    g = gcd_multivariate(a * c, b * c)
    assert (a * c).exact_div(g) * g == a * c
    assert (b * c).exact_div(g) * g == b * c
    expected = sympy.gcd(to_sympy(a * c), to_sympy(b * c))
    assert sympy.simplify(to_sympy(g) / expected).is_number


@given(polys(nonzero=True), polys(nonzero=True), polys(nonzero=True, max_terms=2))
def test_gcd_scales_with_common_factor(a, b, c):
    assert gcd_multivariate(a * c, b * c) == (gcd_multivariate(a, b) * c).normalized()


# -- exact linear algebra ---------------------------------------------------

def test_rank_examples():
    assert rank_exact(ExactMatrix.identity(3)) == 3
    assert rank_exact(ExactMatrix.from_rows([[1, 2], [2, 4]])) == 1
    assert rank_exact(ExactMatrix.from_rows([[0, 0]])) == 0


def test_nullspace_examples():
    assert nullspace_exact(ExactMatrix.identity(3)) == []
    assert nullspace_exact(ExactMatrix.from_rows([[1, -1]])) == [[1, 1]]
    ker = nullspace_exact(ExactMatrix.from_rows([[Fraction(1, 2), 1, 0], [0, 0, 3]]))
    assert ker == [[1, Fraction(-1, 2), 0]]


def test_matrix_shape_checked():
    with pytest.raises(ValueError):
        ExactMatrix(2, 2, (1, 2, 3))
    with pytest.raises(ValueError):
        ExactMatrix.from_rows([[1, 2], [3]])


@given(matrices())
def test_rank_nullity(rows):
    m = ExactMatrix.from_rows(rows)
    ker = nullspace_exact(m)
    assert rank_exact(m) + len(ker) == m.cols
    for v in ker:
        assert next(x for x in v if x) == 1
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


@given(matrices(max_rows=4, max_cols=4, entries=rationals))
def test_rank_matches_sympy(rows):
    assert rank_exact(ExactMatrix.from_rows(rows)) == sympy.Matrix(rows).rank()


@given(st.integers(1, 4).flatmap(lambda n: st.lists(
    st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_sympy(rows):
    assert det_exact(ExactMatrix.from_rows(rows)) == sympy.Matrix(rows).det()


def _example1_values(point):
    # x1 = u/u', x2 = u + u', x1' = (u'^2 - u*u'')/u'^2
    u0, u1, u2 = (Fraction(x) for x in point)
    return [u0 / u1, u0 + u1, (u1 * u1 - u0 * u2) / (u1 * u1), u0]


def test_ansatz_kernel_example1():
    # degree-2 monomials in (x1, x2, x1', u)
    monos = [(0, 0, 0, 0)]
    for i in range(4):
        e = [0] * 4
        e[i] = 1
        monos.append(tuple(e))
    for i in range(4):
        for j in range(i, 4):
            e = [0] * 4
            e[i] += 1
            e[j] += 1
            monos.append(tuple(e))
    rng = random.Random(11)
    rows = []
    while len(rows) < len(monos) + 8:
        pt = [rng.randint(-50, 50) for _ in range(3)]
        if pt[1] == 0:
            continue
        vals = _example1_values(pt)
        row = []
        for e in monos:
            acc = Fraction(1)
            for x, k in zip(vals, e):
                acc *= x ** k
            row.append(acc)
        rows.append(row)
    ker = nullspace_exact(ExactMatrix.from_rows(rows))
    assert len(ker) == 1
    # (x1 + 1) u - x1 x2: coefficients on x1*u, u, x1*x2
    vec = dict(zip(monos, ker[0]))
    nz = {e: c for e, c in vec.items() if c}
    scale = nz[(1, 0, 0, 1)]
    assert {e: c / scale for e, c in nz.items()} == {(1, 0, 0, 1): 1, (0, 0, 0, 1): 1, (1, 1, 0, 0): -1}


# -- modular helpers --------------------------------------------------------

def test_primes_below():
    assert list(__import__("itertools").islice(primes_below(30), 4)) == [29, 23, 19, 17]


@given(st.fractions(min_value=-1000, max_value=1000, max_denominator=1000))
def test_rational_reconstruction_roundtrip(x):
    m = 1_000_000_007 * 998_244_353
    a = x.numerator * pow(x.denominator, -1, m) % m
    assert rational_reconstruct(a, m) == x


def test_crt_pair():
    x, m = crt_pair(2, 3, 3, 5)
    assert m == 15 and x % 3 == 2 and x % 5 == 3


@given(matrices(max_rows=7, max_cols=7, entries=st.integers(0, 100)))
def test_kernel_mod_p_backends_agree(rows):
    p = 1_048_573
    ncols = len(rows[0])
    ref = _kernels_py.kernel_mod_p(rows, ncols, p)
    assert kernels.kernel_mod_p(rows, ncols, p) == ref
    assert nullspace_mod_p(rows, ncols, p) == ref
    for v in ref:
        assert all(sum(a * b for a, b in zip(r, v)) % p == 0 for r in rows)


@given(matrices(max_rows=6, max_cols=6, entries=st.integers(-30, 30)))
def test_bareiss_backends_agree(rows):
    assert kernels.bareiss_echelon(rows) == _kernels_py.bareiss_echelon(rows)


def test_monomial_rows_backends_agree():
    rng = random.Random(3)
    p = 1_048_573
    exps = [tuple(rng.randint(0, 3) for _ in range(4)) for _ in range(20)]
    pts = [tuple(rng.randrange(p) for _ in range(4)) for _ in range(9)]
    assert kernels.monomial_rows_mod_p(exps, pts, p) == _kernels_py.monomial_rows_mod_p(exps, pts, p)


def test_compiled_backend_rejects_large_primes():
    if kernels.BACKEND != "cython":
        pytest.skip("compiled backend not built")
    with pytest.raises(ValueError):
        kernels.kernel_mod_p([[1, 2]], 2, 2 ** 31 - 1)


def test_backend_env_switch():
    import os
    import subprocess
    import sys

    code = "import dluroth.kernels as k; print(k.BACKEND)"
    env = dict(os.environ, DLUROTH_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"
