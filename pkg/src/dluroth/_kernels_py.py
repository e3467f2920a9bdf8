"""Pure-Python reference versions of the hot kernels.

The compiled module ``_ckernels`` exposes the same functions; both are
exercised by the test suite and compared in ``benchmarks/bench_kernels.py``.
"""

from __future__ import annotations


def bareiss_echelon(rows):
    """Fraction-free row echelon form of an integer matrix.

    ``rows`` is a list of lists of ``int`` and is not modified.  Returns
    ``(rank, pivot_cols, echelon)`` where ``echelon`` holds the first ``rank``
    rows of the reduced matrix.  Every entry produced is a minor of the input,
    so the divisions are exact.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv_row = -1
        for i in range(r, nrows):
            if m[i][c]:
                piv_row = i
                break
        if piv_row < 0:
            continue
        if piv_row != r:
            m[r], m[piv_row] = m[piv_row], m[r]
        prow = m[r]
        piv = prow[c]
        for i in range(r + 1, nrows):
            row = m[i]
            a = row[c]
            if a:
                for j in range(c + 1, ncols):
                    row[j] = (piv * row[j] - a * prow[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = (piv * row[j]) // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return r, pivots, m[:r]


def kernel_mod_p(rows, ncols, p):
    """Right kernel over GF(p) of the matrix ``rows`` with ``ncols`` columns.

    Entries must already lie in ``[0, p)``.  Returns one vector per free
    column ``f`` (with a 1 at ``f`` and 0 at the other free columns).
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv_row = -1
        for i in range(r, nrows):
            if m[i][c]:
                piv_row = i
                break
        if piv_row < 0:
            continue
        if piv_row != r:
            m[r], m[piv_row] = m[piv_row], m[r]
        prow = m[r]
        inv = pow(prow[c], p - 2, p)
        if inv != 1:
            for j in range(c, ncols):
                prow[j] = prow[j] * inv % p
        for i in range(r + 1, nrows):
            row = m[i]
            a = row[c]
            if a:
                for j in range(c, ncols):
                    row[j] = (row[j] - a * prow[j]) % p
        pivots.append(c)
        r += 1
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        x = [0] * ncols
        x[f] = 1
        for k in range(r - 1, -1, -1):
            row = m[k]
            pc = pivots[k]
            s = 0
            for j in range(pc + 1, ncols):
                if x[j]:
                    s += row[j] * x[j]
            x[pc] = -s % p
        basis.append(x)
    return basis


def monomial_rows_mod_p(exponents, points, p):
    """Evaluate each monomial at each point modulo ``p``.

    ``exponents`` is a list of equal-length exponent tuples, ``points`` a list
    of value tuples (already reduced mod ``p``).  Returns one row per point.
    """
    if not exponents:
        return [[] for _ in points]
    nvars = len(exponents[0])
    maxdeg = [max(e[k] for e in exponents) for k in range(nvars)]
    out = []
    for pt in points:
        tables = []
        for k in range(nvars):
            t = [1] * (maxdeg[k] + 1)
            x = pt[k]
            for i in range(1, maxdeg[k] + 1):
                t[i] = t[i - 1] * x % p
            tables.append(t)
        row = []
        for e in exponents:
            acc = 1
            for k in range(nvars):
                if e[k]:
                    acc = acc * tables[k][e[k]] % p
            row.append(acc)
        out.append(row)
    return out
