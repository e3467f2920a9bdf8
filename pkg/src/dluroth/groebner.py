"""Buchberger's algorithm over Q and an elimination oracle for M.

The oracle computes ``(F, F', ..., F^(e)) : q^oo`` by adding a variable ``t``
and the generator ``1 - t q``, then eliminates ``t`` and every variable
outside ``Z, U, u^(k0)`` with a block order (grevlex inside each block).
The elimination ideal is principal; its generator is M up to a scalar.

Polynomials here are dicts ``{exponent_tuple: Fraction}`` over a fixed list
of variables, which is much faster than the sparse pair representation for
the many monomial comparisons Buchberger needs.
"""

from __future__ import annotations

import time
from fractions import Fraction

from .basis import Basis
from .diffring import T, DiffVar
from .errors import OracleUnavailableError
from .implicitize import MinimalPolynomial, ansatz_variables
from .poly import SparsePoly
from .prolongation import ProlongedSystem, all_variables

DEFAULT_TIME_LIMIT = 300.0
DEFAULT_MAX_BASIS = 4000


class BlockOrder:
    """Block order: the first ``split`` variables form the eliminated block."""

    def __init__(self, nvars: int, split: int):
        self.nvars = nvars
        self.split = split
        self._cache: dict = {}

    def key(self, e: tuple):
        k = self._cache.get(e)
        if k is None:
            a, b = e[:self.split], e[self.split:]
            k = (sum(a), tuple(-x for x in reversed(a)), sum(b), tuple(-x for x in reversed(b)))
            self._cache[e] = k
        return k


def _lm(p: dict, order: BlockOrder) -> tuple:
    return max(p, key=order.key)


def _monic(p: dict, order: BlockOrder) -> dict:
    lc = p[_lm(p, order)]
    if lc == 1:
        return p
    return {m: c / lc for m, c in p.items()}


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _reduce(p: dict, basis: list, lms: list, order: BlockOrder, deadline: float | None = None) -> dict:
    """Full reduction of ``p`` modulo a list of monic polynomials."""
    p = dict(p)
    out: dict = {}
    steps = 0
    while p:
        steps += 1
        if deadline is not None and steps % 256 == 0 and time.monotonic() > deadline:
            raise OracleUnavailableError("oracle unavailable: Groebner computation exceeded its budget")
        m = max(p, key=order.key)
        c = p[m]
        for g, lg in zip(basis, lms):
            if _divides(lg, m):
                shift = _sub(m, lg)
                for gm, gc in g.items():
                    t = _add(gm, shift)
                    v = p.get(t, 0) - c * gc
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
                break
        else:
            out[m] = c
            del p[m]
    return out


def _spoly(f: dict, lf: tuple, g: dict, lg: tuple) -> dict:
    l = _lcm(lf, lg)
    sf, sg = _sub(l, lf), _sub(l, lg)
    out: dict = {}
    for m, c in f.items():
        out[_add(m, sf)] = c
    for m, c in g.items():
        t = _add(m, sg)
        v = out.get(t, 0) - c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def _update(G: list, lms: list, active: list, pairs: list, h_idx: int) -> None:
    """Gebauer-Moeller update of the pair list and active set for a new element."""
    lh = lms[h_idx]
    cand = [(g, _lcm(lms[g], lh)) for g in range(h_idx) if active[g]]
    accepted = []
    for pos, (g1, l1) in enumerate(cand):
        coprime = not any(x and y for x, y in zip(lms[g1], lh))
        rest = cand[pos + 1:] + accepted
        if coprime or not any(_divides(l2, l1) for _, l2 in rest):
            accepted.append((g1, l1))
    new_pairs = [(g, h_idx, l) for g, l in accepted
                 if any(x and y for x, y in zip(lms[g], lh))]
    kept = []
    for (a, b, l) in pairs:
        if (_divides(lh, l) and _lcm(lms[a], lh) != l and _lcm(lms[b], lh) != l):
            continue
        kept.append((a, b, l))
    pairs[:] = kept + new_pairs
    for g in range(h_idx):
        if active[g] and _divides(lh, lms[g]):
            active[g] = False
    active.append(True)


def buchberger(polys: list, order: BlockOrder, time_limit: float = DEFAULT_TIME_LIMIT,
               max_basis: int = DEFAULT_MAX_BASIS) -> list:
    """Reduced monic Groebner basis of the ideal generated by ``polys``."""
    deadline = time.monotonic() + time_limit
    G: list = []
    lms: list = []
    active: list = []
    pairs: list = []

    def reducers():
        idx = [i for i, a in enumerate(active) if a]
        return [G[i] for i in idx], [lms[i] for i in idx]

    def insert(h):
        h = _monic(h, order)
        G.append(h)
        lms.append(_lm(h, order))
        _update(G, lms, active, pairs, len(G) - 1)

    for p in polys:
        p = {m: Fraction(c) for m, c in p.items() if c}
        if p:
            r = _reduce(p, *reducers(), order, deadline)
            if r:
                insert(r)

    while pairs:
        if time.monotonic() > deadline or len(G) > max_basis:
            raise OracleUnavailableError("oracle unavailable: Groebner computation exceeded its budget")
        best = min(range(len(pairs)), key=lambda k: (sum(pairs[k][2]), order.key(pairs[k][2])))
        a, b, _ = pairs.pop(best)
        s = _spoly(G[a], lms[a], G[b], lms[b])
        if s:
            r = _reduce(s, *reducers(), order, deadline)
            if r:
                insert(r)

    return _interreduce([g for g, a in zip(G, active) if a], order)


def _interreduce(basis: list, order: BlockOrder) -> list:
    basis = [_monic(g, order) for g in basis]
    basis.sort(key=lambda g: order.key(_lm(g, order)))
    out: list = []
    for g in basis:
        lg = _lm(g, order)
        if any(_divides(_lm(h, order), lg) for h in out):
            continue
        out = [h for h in out if not _divides(lg, _lm(h, order))]
        out.append(g)
    final = []
    for i, g in enumerate(out):
        others = out[:i] + out[i + 1:]
        r = _reduce(g, others, [_lm(h, order) for h in others], order)
        final.append(_monic(r, order))
    return final


def _to_dense(p: SparsePoly, index: dict, nvars: int) -> dict:
    out = {}
    for m, c in p.items():
        e = [0] * nvars
        for v, k in m:
            e[index[v]] = k
        out[tuple(e)] = Fraction(c)
    return out


def _from_dense(p: dict, variables: list) -> SparsePoly:
    terms = {}
    for e, c in p.items():
        terms[tuple(sorted((variables[i], k) for i, k in enumerate(e) if k))] = c
    return SparsePoly(terms)


def oracle_size_ok(sys: ProlongedSystem) -> bool:
    """Guard for desk-scale instances."""
    gens = sys.gens
    return gens.n <= 3 and gens.e <= 2 and gens.d <= 3


def eliminate_groebner(sys: ProlongedSystem, basis: Basis, time_limit: float = DEFAULT_TIME_LIMIT,
                       max_basis: int = DEFAULT_MAX_BASIS) -> MinimalPolynomial:
    """Generator of ``(F, ..., F^(e)) : q^oo`` intersected with ``Q[Z, U, u^(k0)]``."""
    if not oracle_size_ok(sys):
        raise OracleUnavailableError("oracle unavailable: instance exceeds the size guard")
    keep = list(ansatz_variables(basis))
    keep_set = set(keep)
    t = DiffVar(0, T)
    drop = [t] + [v for v in all_variables(sys.gens) if v not in keep_set]
    # larger variables first inside each block
    variables = sorted(drop, reverse=True) + sorted(keep, reverse=True)
    index = {v: i for i, v in enumerate(variables)}
    nv = len(variables)
    order = BlockOrder(nv, len(drop))
    gens = [_to_dense(f, index, nv) for layer in sys.layers for f in layer]
    sat = SparsePoly.const(1) - SparsePoly.var(t) * sys.q
    gens.append(_to_dense(sat, index, nv))
    G = buchberger(gens, order, time_limit, max_basis)
    split = len(drop)
    elim = [g for g in G if all(not any(e[:split]) for e in g)]
    if len(elim) != 1:
        raise OracleUnavailableError(
            f"elimination ideal has {len(elim)} generators; expected a hypersurface"
        )
    M = _from_dense(elim[0], variables).normalized()
    return MinimalPolynomial(M, tuple(keep), M.total_degree(), 0, 1, True)
