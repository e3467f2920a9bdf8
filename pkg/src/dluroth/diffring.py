"""Differential variables, the derivation, and rank attributes.

Variables are :class:`DiffVar` values ``(order, kind)``; kind ``0`` is the
indeterminate ``u``, kind ``j >= 1`` is ``x_j``.  Two auxiliary kinds are used
internally: ``Y`` (a renamed copy of ``u``) and ``T`` (a saturation variable).
Tuple comparison gives the global order: first by derivative order, then by
kind, so ``u < x1 < ... < xn`` at equal order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .gcd import gcd_multivariate
from .poly import SparsePoly

U = 0
Y = -1
T = -2


class DiffVar(NamedTuple):
    order: int
    kind: int

    @property
    def name(self) -> str:
        if self.kind == U:
            base = "u"
        elif self.kind == Y:
            base = "y"
        elif self.kind == T:
            return "t" if self.order == 0 else f"t{self.order}"
        else:
            base = f"x{self.kind}"
        if self.order == 0:
            return base
        if self.order <= 2:
            return base + "'" * self.order
        return f"{base}^({self.order})"

    def shifted(self, k: int = 1) -> "DiffVar":
        return DiffVar(self.order + k, self.kind)

    def __str__(self) -> str:
        return self.name


def uvar(k: int = 0) -> DiffVar:
    return DiffVar(k, U)


def xvar(j: int, k: int = 0) -> DiffVar:
    if j < 1:
        raise ValueError("x indices start at 1")
    return DiffVar(k, j)


def u_poly(k: int = 0) -> SparsePoly:
    return SparsePoly.var(uvar(k))


def x_poly(j: int, k: int = 0) -> SparsePoly:
    return SparsePoly.var(xvar(j, k))


def derive(p: SparsePoly) -> SparsePoly:
    """Apply the derivation; coefficients are constants."""
    acc: dict = {}
    for m, c in p.items():
        for i, (v, e) in enumerate(m):
            w = v.shifted()
            rest = dict(m[:i] + m[i + 1:])
            if e > 1:
                rest[v] = e - 1
            rest[w] = rest.get(w, 0) + 1
            nm = tuple(sorted(rest.items()))
            acc[nm] = acc.get(nm, 0) + c * e
    return SparsePoly.from_terms(acc.items())


def derive_n(p: SparsePoly, k: int) -> SparsePoly:
    for _ in range(k):
        p = derive(p)
    return p


def order_of(p: SparsePoly, kind: int | None = None) -> int | None:
    """Largest derivative order of ``kind`` (or any kind) in ``p``; None if absent."""
    orders = [v.order for v in p.variables() if kind is None or v.kind == kind]
    return max(orders) if orders else None


def ritt_class(p: SparsePoly, ordering: Sequence[int]) -> int:
    """1-based position in ``ordering`` of the highest kind occurring in ``p``; 0 for constants."""
    kinds = {v.kind for v in p.variables()}
    if not kinds:
        return 0
    missing = kinds.difference(ordering)
    if missing:
        raise ValueError(f"ordering does not cover kinds {sorted(missing)}")
    return max(ordering.index(k) + 1 for k in kinds)


def leader(p: SparsePoly, ordering: Sequence[int]) -> DiffVar:
    cls = ritt_class(p, ordering)
    if cls == 0:
        raise ValueError("no leader: polynomial is constant")
    kind = ordering[cls - 1]
    return DiffVar(order_of(p, kind), kind)


def separant_initial(p: SparsePoly, ordering: Sequence[int]) -> tuple:
    """``(separant, initial)`` of ``p`` with respect to its leader."""
    lead = leader(p, ordering)
    parts = p.as_univariate(lead)
    top = max(parts)
    return p.diff(lead), parts[top]


def higher_rank(g2: SparsePoly, g1: SparsePoly, ordering: Sequence[int]) -> bool:
    """True when ``g2`` has strictly higher rank than ``g1``."""
    c2, c1 = ritt_class(g2, ordering), ritt_class(g1, ordering)
    if c2 != c1:
        return c2 > c1
    if c2 == 0:
        return False
    kind = ordering[c2 - 1]
    o2, o1 = order_of(g2, kind), order_of(g1, kind)
    if o2 != o1:
        return o2 > o1
    v = DiffVar(o2, kind)
    return g2.degree_in(v) > g1.degree_in(v)


@dataclass(frozen=True)
class DiffRatFun:
    """Reduced quotient ``num / den`` with a normalized denominator."""

    num: SparsePoly
    den: SparsePoly

    @classmethod
    def make(cls, num: SparsePoly, den: SparsePoly) -> "DiffRatFun":
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            return cls(num, SparsePoly.const(1))
        g = gcd_multivariate(num, den)
        if not g.is_constant:
            num, den = num.exact_div(g), den.exact_div(g)
        scale = den.content()
        if den.leading_coeff() < 0:
            scale = -scale
        return cls(num.scale(1 / scale), den.scale(1 / scale))

    @classmethod
    def from_poly(cls, p: SparsePoly) -> "DiffRatFun":
        return cls(p, SparsePoly.const(1))

    def derive(self) -> "DiffRatFun":
        n, d = self.num, self.den
        return DiffRatFun.make(derive(n) * d - n * derive(d), d * d)

    def order(self) -> int | None:
        a, b = order_of(self.num), order_of(self.den)
        if a is None:
            return b
        if b is None:
            return a
        return max(a, b)

    def is_constant(self) -> bool:
        return self.num.is_constant and self.den.is_constant

    def evaluate(self, values):
        return Fraction(self.num.evaluate(values)) / self.den.evaluate(values)

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"
