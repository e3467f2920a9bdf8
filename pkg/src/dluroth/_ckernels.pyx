# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_kernels_py``; same API and results."""

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport malloc, free


def bareiss_echelon(rows):
    cdef list m = [list(src) for src in rows]
    cdef Py_ssize_t nrows = len(m)
    cdef Py_ssize_t ncols = len(m[0]) if nrows else 0
    cdef Py_ssize_t r = 0, c, i, j, piv_row
    cdef list prow, row
    cdef object prev = 1, piv, a
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv_row = -1
        for i in range(r, nrows):
            if (<list>m[i])[c]:
                piv_row = i
                break
        if piv_row < 0:
            continue
        if piv_row != r:
            m[r], m[piv_row] = m[piv_row], m[r]
        prow = <list>m[r]
        piv = prow[c]
        for i in range(r + 1, nrows):
            row = <list>m[i]
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


cdef uint64_t _inv_mod(uint64_t a, uint64_t p):
    cdef uint64_t result = 1, base = a % p, e = p - 2
    while e > 0:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def kernel_mod_p(rows, Py_ssize_t ncols, long long p):
    # Entries are kept as unreduced uint64 sums of products below p**2 and
    # reduced only when read, so (ncols + 1) * p**2 must fit in 64 bits.
    if p < 2 or (ncols + 2.0) * (p - 1.0) * (p - 1.0) >= 1.8e19:
        raise ValueError("prime too large for delayed reduction")
    cdef Py_ssize_t nrows = len(rows)
    cdef uint64_t pp = p
    cdef uint64_t *m = <uint64_t *> malloc(nrows * ncols * sizeof(uint64_t) + 1)
    cdef Py_ssize_t *order = <Py_ssize_t *> malloc(nrows * sizeof(Py_ssize_t) + 1)
    cdef Py_ssize_t *piv = <Py_ssize_t *> malloc(ncols * sizeof(Py_ssize_t) + 1)
    cdef uint64_t *x = <uint64_t *> malloc(ncols * sizeof(uint64_t) + 1)
    cdef uint64_t *prow
    cdef uint64_t *row
    cdef uint64_t inv, a, acc
    cdef Py_ssize_t r = 0, c, i, j, k, piv_row, pc
    if m == NULL or order == NULL or piv == NULL or x == NULL:
        free(m); free(order); free(piv); free(x)
        raise MemoryError()
    try:
        for i in range(nrows):
            order[i] = i
            src = rows[i]
            for j in range(ncols):
                m[i * ncols + j] = src[j] % p
        for c in range(ncols):
            if r == nrows:
                break
            piv_row = -1
            for i in range(r, nrows):
                row = m + order[i] * ncols
                row[c] %= pp
                if piv_row < 0 and row[c] != 0:
                    piv_row = i
            if piv_row < 0:
                continue
            if piv_row != r:
                k = order[r]
                order[r] = order[piv_row]
                order[piv_row] = k
            prow = m + order[r] * ncols
            inv = _inv_mod(prow[c], pp)
            for j in range(c, ncols):
                prow[j] = (prow[j] % pp) * inv % pp
            for i in range(r + 1, nrows):
                row = m + order[i] * ncols
                a = row[c]
                if a != 0:
                    a = pp - a
                    for j in range(c + 1, ncols):
                        row[j] += a * prow[j]
                    row[c] = 0
            piv[r] = c
            r += 1
        basis = []
        k = 0
        for c in range(ncols):
            if k < r and piv[k] == c:
                k += 1
                continue
            for j in range(ncols):
                x[j] = 0
            x[c] = 1
            for i in range(r - 1, -1, -1):
                pc = piv[i]
                if pc > c:
                    continue
                row = m + order[i] * ncols
                acc = 0
                for j in range(pc + 1, ncols):
                    if x[j] != 0:
                        acc += (row[j] % pp) * x[j]
                acc %= pp
                x[pc] = (pp - acc) % pp
            basis.append([x[j] for j in range(ncols)])
        return basis
    finally:
        free(m)
        free(order)
        free(piv)
        free(x)


def monomial_rows_mod_p(exponents, points, long long p):
    cdef Py_ssize_t nmono = len(exponents)
    cdef Py_ssize_t npts = len(points)
    if nmono == 0:
        return [[] for _ in points]
    cdef Py_ssize_t nvars = len(exponents[0])
    cdef Py_ssize_t i, k, t, q, width
    cdef int64_t acc, pp = p
    cdef int *exps = <int *> malloc(nmono * nvars * sizeof(int) + 1)
    cdef int *maxdeg = <int *> malloc(nvars * sizeof(int) + 1)
    cdef int64_t *tables = NULL
    if exps == NULL or maxdeg == NULL:
        free(exps)
        free(maxdeg)
        raise MemoryError()
    try:
        for k in range(nvars):
            maxdeg[k] = 0
        for i in range(nmono):
            e = exponents[i]
            for k in range(nvars):
                exps[i * nvars + k] = e[k]
                if e[k] > maxdeg[k]:
                    maxdeg[k] = e[k]
        width = 0
        for k in range(nvars):
            if maxdeg[k] + 1 > width:
                width = maxdeg[k] + 1
        tables = <int64_t *> malloc(nvars * width * sizeof(int64_t) + 1)
        if tables == NULL:
            raise MemoryError()
        out = []
        for q in range(npts):
            pt = points[q]
            for k in range(nvars):
                tables[k * width] = 1
                acc = pt[k]
                for t in range(1, maxdeg[k] + 1):
                    tables[k * width + t] = tables[k * width + t - 1] * acc % pp
            row = []
            for i in range(nmono):
                acc = 1
                for k in range(nvars):
                    t = exps[i * nvars + k]
                    if t:
                        acc = acc * tables[k * width + t] % pp
                row.append(acc)
            out.append(row)
        return out
    finally:
        free(exps)
        free(maxdeg)
        free(tables)
