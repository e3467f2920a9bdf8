"""Generator assembly, certificates, bounds and homographic equivalence."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm

from .diffring import U, Y, DiffRatFun, DiffVar
from .errors import DegenerateInputError, RetryExhaustedError
from .implicitize import bezout_degree_bound, structured_degree_bound, substitute_parametrization
from .linalg import ExactMatrix, nullspace_exact
from .poly import SparsePoly
from .prolongation import (
    DEFAULT_ATTEMPTS,
    DEFAULT_COEFF_BOUND,
    GeneratorInput,
    ProlongedSystem,
    draw_point,
    jet_values,
    parametrization_derivative,
)
from .rng import CounterRNG


class ConstantGeneratorError(DegenerateInputError):
    """The two specializations are proportional, so their ratio lies in Q."""


@dataclass(frozen=True)
class BoundsReport:
    order_bound: int
    bezout_bound: int
    structured_bound: int


@dataclass(frozen=True)
class LurothResult:
    M1: SparsePoly
    M2: SparsePoly
    v: DiffRatFun
    u1: tuple
    u2: tuple
    gamma: DiffRatFun | None
    verified: bool
    attempts: int


def bounds_report(gens: GeneratorInput) -> BoundsReport:
    return BoundsReport(min(gens.orders), bezout_degree_bound(gens), structured_degree_bound(gens))


def specialize_at(M: SparsePoly, gens: GeneratorInput, point) -> SparsePoly:
    """Replace the x-variables of M by their values above ``point``.

    Denominators are cleared and the sign fixed, but integer content is kept.
    """
    values = jet_values(gens, point)
    xs = {v: values[v] for v in M.variables() if v.kind != U}
    out = M.substitute(xs).sign_normalized()
    den = lcm(*(Fraction(c).denominator for _, c in out.items())) if not out.is_zero else 1
    return out.scale(den) if den != 1 else out


def specialize_minimal_polynomial(M: SparsePoly, sys: ProlongedSystem, rng: CounterRNG,
                                  points: tuple | None = None,
                                  coeff_bound: int = DEFAULT_COEFF_BOUND,
                                  attempts: int = DEFAULT_ATTEMPTS) -> tuple:
    """Two specializations ``(M1, M2, u1, u2, tries)`` that are nonzero and not proportional.

    ``points`` pins ``(u1, u2)`` instead of drawing them.
    """
    gens = sys.gens
    if points is not None:
        u1, u2 = (tuple(p) for p in points)
        M1, M2 = specialize_at(M, gens, u1), specialize_at(M, gens, u2)
        if M1.is_zero or M2.is_zero or M1.is_proportional(M2):
            raise RetryExhaustedError("degenerate specialization at the given points")
        return M1, M2, u1, u2, 1
    for tries in range(1, attempts + 1):
        u1 = draw_point(gens, rng, coeff_bound, attempts)
        u2 = draw_point(gens, rng, coeff_bound, attempts)
        M1, M2 = specialize_at(M, gens, u1), specialize_at(M, gens, u2)
        if M1.is_zero or M2.is_zero or M1.is_proportional(M2):
            continue
        return M1, M2, u1, u2, tries
    raise RetryExhaustedError("degenerate specialization: retries exhausted")


def normalize_generator(M1: SparsePoly, M2: SparsePoly) -> DiffRatFun:
    """Reduced quotient ``M1/M2``; proportional inputs raise :class:`ConstantGeneratorError`."""
    if M2.is_zero:
        raise ZeroDivisionError("zero denominator")
    if M1.is_zero or M1.is_proportional(M2):
        raise ConstantGeneratorError("constant generator")
    return DiffRatFun.make(M1, M2)


def _to_y(p: SparsePoly) -> SparsePoly:
    return p.rename({v: DiffVar(v.order, Y) for v in p.variables() if v.kind == U})


def verify_generator(gens: GeneratorInput, M: SparsePoly, v: DiffRatFun) -> tuple:
    """Proportionality certificate between M(parametrization, y) and D(u, y).

    ``D(u, y) = den(u) num(y) - num(u) den(y)``.  Returns ``(ok, gamma)`` with
    ``M~ = gamma * D`` when ``ok``.
    """
    ys = {w: DiffVar(w.order, Y) for w in M.variables() if w.kind == U}
    My = M.rename(ys)
    # x-variables become parametrizations in u; the cleared factor is tracked
    cleared = substitute_parametrization(gens, My)
    factor = SparsePoly.const(1)
    for w in My.variables():
        if w.kind >= 1:
            den = parametrization_derivative(gens, w.kind, w.order).den
            factor = factor * den ** My.degree_in(w)
    num, den = v.num, v.den
    D = den * _to_y(num) - num * _to_y(den)
    if D.is_zero or cleared.is_zero:
        return False, None

    def is_y(w):
        return w.kind == Y

    cm = cleared.split(is_y)
    cd = D.split(is_y)
    if cm.keys() != cd.keys():
        return False, None
    ref = max(cd, key=lambda m: (len(m), m))
    a_ref, b_ref = cm[ref], cd[ref]
    for m in cd:
        if m == ref:
            continue
        if not (cm[m] * b_ref - cd[m] * a_ref).is_zero:
            return False, None
    gamma = DiffRatFun.make(a_ref, b_ref * factor)
    return True, gamma


def homographic_equivalence(v: DiffRatFun, w: DiffRatFun) -> bool:
    """True iff ``w = (a v + b)/(c v + d)`` for rationals with ``ad - bc != 0``."""
    nv, dv, nw, dw = v.num, v.den, w.num, w.den
    cols = [nv * dw, dv * dw, -(nv * nw), -(dv * nw)]
    monos = sorted({m for p in cols for m in p.terms})
    if not monos:
        return False
    rows = [[p.coefficient(m) for p in cols] for m in monos]
    kernel = nullspace_exact(ExactMatrix.from_rows(rows))
    if not kernel:
        return False
    # a nonzero quadratic form cannot vanish on a full 3^k grid
    for coeffs in product(range(3), repeat=len(kernel)):
        if not any(coeffs):
            continue
        a, b, c, d = (sum(k * vec[i] for k, vec in zip(coeffs, kernel)) for i in range(4))
        if a * d - b * c != 0:
            return True
    return False


def order_of_generator(v: DiffRatFun) -> int:
    o = v.order()
    return 0 if o is None else o
