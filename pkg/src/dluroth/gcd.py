"""Multivariate polynomial gcd over the rationals.

Recursive content / primitive part decomposition in the largest variable,
with the subresultant polynomial remainder sequence for primitive parts.
"""

from __future__ import annotations

from .poly import SparsePoly

_ONE = SparsePoly.const(1)


def gcd_multivariate(a: SparsePoly, b: SparsePoly) -> SparsePoly:
    """Greatest common divisor, integer-primitive with positive leading coefficient.

    ``gcd(p, 0)`` is ``p`` normalized.  Both inputs zero is an error.
    """
    if a.is_zero and b.is_zero:
        raise ValueError("gcd of two zero polynomials is undefined")
    if a.is_zero:
        return b.normalized()
    if b.is_zero:
        return a.normalized()
    return _gcd(a.normalized(), b.normalized()).normalized()


def _gcd(a: SparsePoly, b: SparsePoly) -> SparsePoly:
    # a, b nonzero with integer coefficients
    if a.is_constant or b.is_constant:
        return _ONE
    if a == b:
        return a
    va, vb = a.variables(), b.variables()
    x = max(va | vb)
    if x not in vb:
        return _gcd_with_coeffs(a, x, b)
    if x not in va:
        return _gcd_with_coeffs(b, x, a)

    ua, ub = _univ(a, x), _univ(b, x)
    ca, cb = _content(ua), _content(ub)
    c = _gcd(ca, cb)
    pa = [q.exact_div(ca) for q in ua] if not ca.is_constant else ua
    pb = [q.exact_div(cb) for q in ub] if not cb.is_constant else ub
    if len(pa) < len(pb):
        pa, pb = pb, pa
    g = _subresultant_last(pa, pb)
    if len(g) == 1:
        return c
    gp = _primitive(g)
    return c * _from_univ(gp, x)


def _gcd_with_coeffs(a: SparsePoly, x, b: SparsePoly) -> SparsePoly:
    # x occurs in a but not in b: the gcd divides every coefficient of a in x
    g = b
    for coeff in a.as_univariate(x).values():
        g = _gcd(g, coeff.normalized())
        if g.is_constant:
            return _ONE
    return g


def _univ(p: SparsePoly, x) -> list:
    parts = p.as_univariate(x)
    deg = max(parts)
    zero = SparsePoly.const(0)
    return [parts.get(i, zero) for i in range(deg + 1)]


def _from_univ(coeffs: list, x) -> SparsePoly:
    out = SparsePoly.const(0)
    for i, c in enumerate(coeffs):
        if not c.is_zero:
            out = out + (c if i == 0 else c * SparsePoly.var(x, i))
    return out


def _content(coeffs: list) -> SparsePoly:
    g = None
    for c in coeffs:
        if c.is_zero:
            continue
        g = c.normalized() if g is None else _gcd(g, c.normalized())
        if g.is_constant:
            return _ONE
    return g if g is not None else _ONE


def _primitive(coeffs: list) -> list:
    c = _content(coeffs)
    if not c.is_constant:
        coeffs = [q.exact_div(c) for q in coeffs]
    return coeffs


def _strip(p: list) -> list:
    while p and p[-1].is_zero:
        p = p[:-1]
    return p


def _prem(a: list, b: list) -> list:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    k = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for i in range(db + 1):
            r[i + shift] = r[i + shift] - lr * b[i]
        r = _strip(r)
        k -= 1
    if k > 0:
        f = lb ** k
        r = [c * f for c in r]
    return r


def _subresultant_last(a: list, b: list) -> list:
    """Last nonzero element of the subresultant PRS of ``a`` and ``b`` (deg a >= deg b)."""
    g = _ONE
    h = _ONE
    while True:
        delta = len(a) - len(b)
        r = _prem(a, b)
        if not r:
            return b
        if len(r) == 1:
            return r
        div = g * h ** delta
        a, b = b, [c.exact_div(div) for c in r]
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = (g ** delta).exact_div(h ** (delta - 1))
