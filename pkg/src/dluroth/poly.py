"""Sparse multivariate polynomials with exact rational coefficients.

A monomial is a tuple of ``(variable, exponent)`` pairs sorted by variable,
with no zero exponents.  Variables can be any hashable, totally ordered value;
the package uses :class:`dluroth.diffring.DiffVar`.  Coefficients are ``int``
or :class:`fractions.Fraction` (integral fractions are stored as ``int`` so
that integer polynomials stay on the fast path).

Terms are printed and compared under graded lexicographic order with respect
to the natural order of the variables.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd
from math import lcm as _ilcm
from typing import Callable, Iterable, Iterator, Mapping

Monomial = tuple  # tuple[tuple[var, int], ...]

ONE_MONO: Monomial = ()


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    if i < la:
        out.extend(a[i:])
    if j < lb:
        out.extend(b[j:])
    return tuple(out)


def mono_div(a: Monomial, b: Monomial) -> Monomial | None:
    """Return a/b, or None when b does not divide a."""
    da = dict(a)
    for v, e in b:
        ea = da.get(v, 0)
        if ea < e:
            return None
        if ea == e:
            del da[v]
        else:
            da[v] = ea - e
    return tuple(sorted(da.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def grlex_key(m: Monomial):
    """Sort key for graded lex order; larger key means larger monomial."""
    return (mono_degree(m), tuple(reversed(m)))


def var_name(v) -> str:
    return getattr(v, "name", None) or str(v)


class SparsePoly:
    """Immutable sparse polynomial.

    Build with :meth:`const`, :meth:`var` or :meth:`from_terms` and combine
    with the usual arithmetic operators.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        acc: dict = {}
        if terms:
            for m, c in terms.items():
                if not c:
                    continue
                exps: dict = {}
                for v, e in m:
                    exps[v] = exps.get(v, 0) + e
                key = tuple(sorted((v, e) for v, e in exps.items() if e))
                acc[key] = acc.get(key, 0) + c
        self._terms = {m: _norm(c) for m, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "SparsePoly":
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "SparsePoly":
        return cls._raw({ONE_MONO: _norm(c)} if c else {})

    @classmethod
    def var(cls, v, exp: int = 1) -> "SparsePoly":
        if exp == 0:
            return cls.const(1)
        return cls._raw({((v, exp),): 1})

    @classmethod
    def monomial(cls, mono: Monomial, coeff=1) -> "SparsePoly":
        return cls._raw({mono: _norm(coeff)} if coeff else {})

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[Monomial, object]]) -> "SparsePoly":
        acc: dict = {}
        for m, c in terms:
            acc[m] = acc.get(m, 0) + c
        return cls._raw({m: _norm(c) for m, c in acc.items() if c})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict:
        """The underlying ``{monomial: coefficient}`` dict.  Do not mutate."""
        return self._terms

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONO in self._terms)

    def constant_value(self):
        """Return the value of a constant polynomial."""
        if not self.is_constant:
            raise ValueError("polynomial is not constant")
        return self._terms.get(ONE_MONO, 0)

    def coefficient(self, mono: Monomial):
        return self._terms.get(mono, 0)

    def variables(self) -> frozenset:
        return frozenset(v for m in self._terms for v, _ in m)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(mono_degree(m) for m in self._terms)

    def degree_in(self, v) -> int:
        best = -1 if not self._terms else 0
        for m in self._terms:
            for w, e in m:
                if w == v and e > best:
                    best = e
        return best

    def sorted_terms(self) -> list:
        """Terms in decreasing graded lex order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms, key=grlex_key)

    def leading_coeff(self):
        if not self._terms:
            return 0
        return self._terms[self.leading_monomial()]

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self._terms.values())

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            return other
        if isinstance(other, (int, Fraction)):
            return SparsePoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self._terms) < len(other._terms):
            small, big = self._terms, other._terms
        else:
            small, big = other._terms, self._terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = _norm(s)
            else:
                out.pop(m, None)
        return SparsePoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) - c
            if s:
                out[m] = _norm(s)
            else:
                out.pop(m, None)
        return SparsePoly._raw(out)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return SparsePoly._raw({})
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = mono_mul(ma, mb)
                out[m] = get(m, 0) + ca * cb
        return SparsePoly._raw({m: _norm(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = SparsePoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "SparsePoly":
        if not c:
            return SparsePoly._raw({})
        if c == 1:
            return self
        return SparsePoly._raw({m: _norm(v * c) for m, v in self._terms.items()})

    def mul_monomial(self, mono: Monomial, coeff=1) -> "SparsePoly":
        if not coeff:
            return SparsePoly._raw({})
        return SparsePoly._raw(
            {mono_mul(m, mono): _norm(c * coeff) for m, c in self._terms.items()}
        )

    def exact_div(self, other: "SparsePoly") -> "SparsePoly":
        """Quotient of an exact division; raises ``ArithmeticError`` otherwise."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if other.is_constant:
            c = other.constant_value()
            return SparsePoly._raw(
                {m: _norm(Fraction(v) / c) for m, v in self._terms.items()}
            )
        lm_b = other.leading_monomial()
        lc_b = Fraction(other._terms[lm_b])
        rem = dict(self._terms)
        quot: dict = {}
        b_terms = list(other._terms.items())
        while rem:
            lm_r = max(rem, key=grlex_key)
            t = mono_div(lm_r, lm_b)
            if t is None:
                raise ArithmeticError("inexact polynomial division")
            c = _norm(rem[lm_r] / lc_b)
            quot[t] = c
            for mb, cb in b_terms:
                m = mono_mul(mb, t)
                s = rem.get(m, 0) - c * cb
                if s:
                    rem[m] = _norm(s)
                else:
                    rem.pop(m, None)
        return SparsePoly._raw(quot)

    # -- calculus and substitution ---------------------------------------

    def diff(self, v) -> "SparsePoly":
        """Partial derivative with respect to ``v``."""
        out: dict = {}
        for m, c in self._terms.items():
            for i, (w, e) in enumerate(m):
                if w == v:
                    if e == 1:
                        nm = m[:i] + m[i + 1:]
                    else:
                        nm = m[:i] + ((w, e - 1),) + m[i + 1:]
                    out[nm] = out.get(nm, 0) + c * e
                    break
        return SparsePoly._raw({m: _norm(c) for m, c in out.items() if c})

    def evaluate(self, values: Mapping):
        """Evaluate at a full assignment ``{var: number}``."""
        total = 0
        for m, c in self._terms.items():
            t = c
            for v, e in m:
                t = t * values[v] ** e
            total += t
        return _norm(total) if isinstance(total, Fraction) else total

    def substitute(self, values: Mapping) -> "SparsePoly":
        """Replace some variables by numbers, keeping the rest symbolic."""
        out: dict = {}
        for m, c in self._terms.items():
            rest = []
            for v, e in m:
                if v in values:
                    c = c * values[v] ** e
                else:
                    rest.append((v, e))
            if c:
                key = tuple(rest)
                out[key] = out.get(key, 0) + c
        return SparsePoly._raw({m: _norm(c) for m, c in out.items() if c})

    def compose(self, images: Mapping) -> "SparsePoly":
        """Replace variables by polynomials (variables absent from ``images`` stay)."""
        power_cache: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in power_cache:
                power_cache[key] = images[v] ** e
            return power_cache[key]

        result = SparsePoly._raw({})
        for m, c in self._terms.items():
            keep = []
            term = SparsePoly.const(c)
            for v, e in m:
                if v in images:
                    term = term * power(v, e)
                else:
                    keep.append((v, e))
            if keep:
                term = term.mul_monomial(tuple(keep))
            result = result + term
        return result

    def rename(self, mapping: Mapping) -> "SparsePoly":
        """Rename variables by an injective mapping."""
        out: dict = {}
        for m, c in self._terms.items():
            nm = tuple(sorted((mapping.get(v, v), e) for v, e in m))
            out[nm] = out.get(nm, 0) + c
        return SparsePoly._raw({m: _norm(c) for m, c in out.items() if c})

    def split(self, keep: Callable[[object], bool]) -> dict:
        """Group terms by their sub-monomial in the variables selected by ``keep``.

        Returns ``{monomial_in_kept_vars: coefficient_polynomial}``.
        """
        groups: dict = {}
        for m, c in self._terms.items():
            inner = tuple(p for p in m if keep(p[0]))
            outer = tuple(p for p in m if not keep(p[0]))
            g = groups.setdefault(inner, {})
            g[outer] = c
        return {k: SparsePoly._raw(v) for k, v in groups.items()}

    def as_univariate(self, v) -> dict:
        """``{exponent: coefficient_polynomial}`` with respect to ``v``."""
        groups: dict = {}
        for m, c in self._terms.items():
            e = 0
            rest = m
            for i, (w, k) in enumerate(m):
                if w == v:
                    e = k
                    rest = m[:i] + m[i + 1:]
                    break
            groups.setdefault(e, {})[rest] = c
        return {e: SparsePoly._raw(t) for e, t in groups.items()}

    # -- normalization ----------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational content (gcd of numerators over lcm of denominators)."""
        num = 0
        den = 1
        for c in self._terms.values():
            if type(c) is int:
                num = _igcd(num, c)
            else:
                num = _igcd(num, c.numerator)
                den = _ilcm(den, c.denominator)
        return Fraction(num, den)

    def normalized(self) -> "SparsePoly":
        """Integer-primitive associate with positive leading coefficient."""
        if not self._terms:
            return self
        c = self.content()
        if self.leading_coeff() < 0:
            c = -c
        if c == 1:
            return self
        if c.denominator == 1:
            k = c.numerator
            return SparsePoly._raw({m: v // k for m, v in self._terms.items()})
        return SparsePoly._raw({m: _norm(v / c) for m, v in self._terms.items()})

    def sign_normalized(self) -> "SparsePoly":
        """Associate with positive leading coefficient, coefficients untouched otherwise."""
        if self._terms and self.leading_coeff() < 0:
            return -self
        return self

    def is_proportional(self, other: "SparsePoly") -> bool:
        """True when ``self = c * other`` for a nonzero rational ``c``."""
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        if self._terms.keys() != other._terms.keys():
            return False
        return self.normalized() == other.normalized()

    # -- protocol ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({ONE_MONO: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __iter__(self) -> Iterator:
        return iter(self._terms.items())

    def __repr__(self):
        return f"SparsePoly({self})"

    def __str__(self):
        return render(self)


def render_monomial(m: Monomial) -> str:
    parts = []
    for v, e in m:
        name = var_name(v)
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def _render_coeff(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def render(p: SparsePoly) -> str:
    """Canonical text form, terms in decreasing graded lex order."""
    if p.is_zero:
        return "0"
    out = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        if m:
            body = render_monomial(m)
            text = body if a == 1 else f"{_render_coeff(a)}*{body}"
        else:
            text = _render_coeff(a)
        if i == 0:
            out.append(f"-{text}" if neg else text)
        else:
            out.append(f" - {text}" if neg else f" + {text}")
    return "".join(out)


def poly_sum(polys: Iterable[SparsePoly]) -> SparsePoly:
    acc: dict = {}
    for p in polys:
        for m, c in p._terms.items():
            acc[m] = acc.get(m, 0) + c
    return SparsePoly._raw({m: _norm(c) for m, c in acc.items() if c})
