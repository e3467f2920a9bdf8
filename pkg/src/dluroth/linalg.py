"""Exact linear algebra over the rationals, plus the modular helpers used by
implicitization (kernels mod p and rational reconstruction)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm
from typing import Sequence

from . import kernels


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major tuple of rationals

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        flat = tuple(Fraction(x) if not isinstance(x, int) else x for r in rows for x in r)
        return cls(len(rows), ncols, flat)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list:
        return [self.row(i) for i in range(self.rows)]


def _integer_rows(m: ExactMatrix) -> list:
    out = []
    for row in m.to_rows():
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def rank_exact(m: ExactMatrix) -> int:
    """Rank over Q by fraction-free elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    rank, _, _ = kernels.bareiss_echelon(_integer_rows(m))
    return rank


def nullspace_exact(m: ExactMatrix) -> list:
    """Basis of the right kernel; each vector scaled so its first nonzero entry is 1."""
    if m.cols == 0:
        return []
    if m.rows == 0:
        return [[Fraction(int(i == j)) for i in range(m.cols)] for j in range(m.cols)]
    rank, pivots, ech = kernels.bareiss_echelon(_integer_rows(m))
    pivset = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivset:
            continue
        x = [Fraction(0)] * m.cols
        x[f] = Fraction(1)
        for i in range(rank - 1, -1, -1):
            pc = pivots[i]
            row = ech[i]
            s = sum((row[j] * x[j] for j in range(pc + 1, m.cols) if row[j] and x[j]), Fraction(0))
            x[pc] = -s / row[pc]
        lead = next(v for v in x if v)
        basis.append([v / lead for v in x])
    return basis


def det_exact(m: ExactMatrix) -> Fraction:
    """Determinant of a square matrix by Gaussian elimination over Q."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    a = [[Fraction(x) for x in row] for row in m.to_rows()]
    n = m.rows
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                for j in range(c, n):
                    a[i][j] -= f * a[c][j]
    return det


# -- modular helpers ---------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_below(bound: int = 2 ** 31):
    """Yield primes in decreasing order starting just below ``bound``."""
    n = bound - 1
    while n > 2:
        if _is_prime(n):
            yield n
        n -= 1


def to_mod(x, p: int) -> int:
    """Reduce a rational modulo p; raises ZeroDivisionError when the denominator vanishes."""
    if isinstance(x, Fraction):
        den = x.denominator % p
        if den == 0:
            raise ZeroDivisionError("denominator divisible by p")
        return x.numerator * pow(den, p - 2, p) % p
    return x % p


def nullspace_mod_p(rows: list, ncols: int, p: int) -> list:
    """Kernel basis over GF(p); the vector for free column f has a 1 at f.

    The compiled backend needs ``(ncols + 2) * p**2 < 2**64``.
    """
    if not rows:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    return kernels.kernel_mod_p(rows, ncols, p)


def rational_reconstruct(a: int, m: int) -> Fraction | None:
    """Rational n/d with n = a*d mod m and |n|, d <= sqrt(m/2), or None."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)


def crt_pair(a1: int, m1: int, a2: int, m2: int) -> tuple:
    """Combine residues for coprime moduli."""
    t = (a2 - a1) * pow(m1, -1, m2) % m2
    return a1 + m1 * t, m1 * m2
