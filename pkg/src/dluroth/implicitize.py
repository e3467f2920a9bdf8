"""Minimal polynomial of ``u^(k0)`` over the transcendence basis.

The projection ``(Z, U, u^(k0))`` of the variety is a hypersurface; its
defining polynomial M is found by an ansatz over all monomials of total
degree <= D, for D = 1, 2, ...  The evaluation matrix at sample points is
reduced modulo small primes (an empty kernel mod p proves an empty kernel
over Q).  A one-dimensional modular kernel fixes the support of M, which is
then solved for exactly; CRT with rational reconstruction is the fallback.
Every candidate is accepted only after an exact symbolic vanishing check.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, islice
from math import comb

from . import kernels
from .basis import Basis
from .diffring import U, DiffVar, uvar
from .errors import DegreeCapError, RetryExhaustedError
from .linalg import (
    ExactMatrix,
    crt_pair,
    nullspace_exact,
    nullspace_mod_p,
    primes_below,
    rational_reconstruct,
)
from .poly import SparsePoly
from .prolongation import (
    DEFAULT_ATTEMPTS,
    DEFAULT_COEFF_BOUND,
    GeneratorInput,
    ProlongedSystem,
    draw_point,
    parametrization_derivative,
    u_assignment,
)
from .rng import CounterRNG

log = logging.getLogger(__name__)

EXTRA_SAMPLES = 8
# largest ansatz attempted; about ten seconds of modular elimination
MAX_MONOMIALS = 3500
MAX_PRIMES = 64
# small enough for the compiled kernel's delayed reduction
PRIME_BOUND = 2 ** 21
_PRIMES = list(islice(primes_below(PRIME_BOUND), MAX_PRIMES + 16))


@dataclass(frozen=True)
class MinimalPolynomial:
    M: SparsePoly
    variables: tuple
    degree: int
    samples: int
    kernel_dim: int
    symbolically_verified: bool
    primes_used: int = 0
    resamples: int = 0

    @property
    def report(self) -> dict:
        return {
            "degree": self.degree,
            "samples": self.samples,
            "kernel_dim": self.kernel_dim,
            "symbolically_verified": self.symbolically_verified,
        }


def ansatz_variables(basis: Basis) -> tuple:
    return tuple(basis.Z) + tuple(basis.U) + (uvar(basis.k0),)


def monomial_exponents(nvars: int, degree: int) -> list:
    """All exponent tuples of total degree <= ``degree``, by degree then lex."""
    out = []
    for d in range(degree + 1):
        block = []
        for combo in combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            block.append(tuple(e))
        block.sort(reverse=True)
        out.extend(block)
    return out


def monomial_count(nvars: int, degree: int) -> int:
    return comb(nvars + degree, degree)


def poly_from_vector(variables, exponents, coeffs) -> SparsePoly:
    terms = {}
    for e, c in zip(exponents, coeffs):
        if c:
            terms[tuple((v, k) for v, k in sorted(zip(variables, e)) if k)] = c
    return SparsePoly(terms)


class _Sampler:
    """Exact coordinate values ``(Z, U, u^(k0))`` at random admissible jets."""

    def __init__(self, gens: GeneratorInput, variables: tuple, rng: CounterRNG,
                 coeff_bound: int, attempts: int):
        self.gens = gens
        self.variables = variables
        self.rng = rng
        self.coeff_bound = coeff_bound
        self.attempts = attempts
        self.rows: list = []
        self._images = {}
        for v in variables:
            if v.kind != U:
                r = parametrization_derivative(gens, v.kind, v.order)
                self._images[v] = (r.num, r.den)

    def ensure(self, count: int) -> None:
        while len(self.rows) < count:
            pt = draw_point(self.gens, self.rng, self.coeff_bound, self.attempts)
            vals = u_assignment(pt)
            row = []
            for v in self.variables:
                if v.kind == U:
                    row.append(Fraction(pt[v.order]))
                else:
                    num, den = self._images[v]
                    d = den.evaluate(vals)
                    if d == 0:
                        break
                    row.append(Fraction(num.evaluate(vals)) / d)
            else:
                self.rows.append(row)

    def reset(self) -> None:
        self.rows = []

    def mod_rows(self, count: int, p: int) -> list | None:
        out = []
        for row in self.rows[:count]:
            r = []
            for x in row:
                den = x.denominator % p
                if den == 0:
                    return None
                r.append(x.numerator * pow(den, p - 2, p) % p)
            out.append(r)
        return out


def _kernel_mod_p(sampler: _Sampler, exponents: list, count: int, p: int):
    pts = sampler.mod_rows(count, p)
    if pts is None:
        return None
    rows = kernels.monomial_rows_mod_p(exponents, pts, p)
    return nullspace_mod_p(rows, len(exponents), p)


def _solve_on_support(sampler, exponents, vec, gens, variables, basis):
    """Exact kernel restricted to the support of a modular kernel vector.

    The support mod p equals the support over Q unless p divides one of the
    true coefficients; a wrong guess is caught by the symbolic check.
    """
    support = [i for i, x in enumerate(vec) if x]
    exps = [exponents[i] for i in support]
    rows = []
    for pt in sampler.rows[:len(support) + EXTRA_SAMPLES]:
        row = []
        for e in exps:
            acc = Fraction(1)
            for x, k in zip(pt, e):
                if k:
                    acc *= x ** k
            row.append(acc)
        rows.append(row)
    ker = nullspace_exact(ExactMatrix.from_rows(rows, len(exps)))
    if len(ker) != 1:
        return None
    cand = poly_from_vector(variables, exps, ker[0]).normalized()
    if vanish_check_symbolic(gens, cand, basis):
        return cand
    return None


def _lift(sampler, exponents, count, first_vec, first_p, gens, variables, basis):
    """CRT-lift one modular kernel vector and certify the result.

    The vector is identified across primes by its free column: the kernel
    basis returned by the modular solver is the reduced one (1 on its own
    free column, 0 on the others), which is the same subspace basis over Q
    for all good primes.
    """
    anchor = max(i for i, x in enumerate(first_vec) if x)
    inv = pow(first_vec[anchor], first_p - 2, first_p)
    residues = [x * inv % first_p for x in first_vec]
    modulus = first_p
    previous = None
    used = 1
    for p in _PRIMES:
        if p == first_p:
            continue
        if used >= MAX_PRIMES:
            break
        ker = _kernel_mod_p(sampler, exponents, count, p)
        if not ker:
            continue
        vec = next((v for v in ker if max(i for i, x in enumerate(v) if x) == anchor), None)
        if vec is None:
            continue
        inv = pow(vec[anchor], p - 2, p)
        vec = [x * inv % p for x in vec]
        residues = [crt_pair(a, modulus, b, p)[0] for a, b in zip(residues, vec)]
        modulus *= p
        used += 1
        coeffs = [rational_reconstruct(a, modulus) for a in residues]
        if any(c is None for c in coeffs):
            previous = None
            continue
        if coeffs != previous:
            previous = coeffs
            continue
        cand = poly_from_vector(variables, exponents, coeffs).normalized()
        if vanish_check_symbolic(gens, cand, basis):
            return cand, used
        previous = None
    return None, used


def minimal_polynomial(sys: ProlongedSystem, basis: Basis, rng: CounterRNG,
                       max_degree: int | None = None, coeff_bound: int = DEFAULT_COEFF_BOUND,
                       attempts: int = DEFAULT_ATTEMPTS,
                       max_monomials: int = MAX_MONOMIALS) -> MinimalPolynomial:
    """Least-degree polynomial in ``Z, U, u^(k0)`` vanishing on the variety.

    Raises :class:`DegreeCapError` once the degree exceeds ``max_degree``
    (default: the smaller of the two a priori bounds) or the ansatz would
    need more than ``max_monomials`` unknowns.
    """
    gens = sys.gens
    if max_degree is None:
        max_degree = min(structured_degree_bound(gens), bezout_degree_bound(gens))
    variables = ansatz_variables(basis)
    nvars = len(variables)
    sampler = _Sampler(gens, variables, rng, coeff_bound, attempts)
    resamples = 0
    D = 1
    while D <= max_degree:
        if monomial_count(nvars, D) > max_monomials:
            raise DegreeCapError(
                f"degree cap reached: degree {D} needs more than {max_monomials} monomials"
            )
        exponents = monomial_exponents(nvars, D)
        count = len(exponents) + EXTRA_SAMPLES
        sampler.ensure(count)
        ker = None
        for p in _PRIMES[:4]:
            ker = _kernel_mod_p(sampler, exponents, count, p)
            if ker is not None:
                break
        if not ker:
            log.debug("degree %d: trivial kernel (%d monomials)", D, len(exponents))
            D += 1
            continue
        first_p = p
        if len(ker) > 1:
            # a second prime can only lower the kernel dimension if the first was unlucky
            for p2 in _PRIMES[4:8]:
                k2 = _kernel_mod_p(sampler, exponents, count, p2)
                if k2 is not None and len(k2) < len(ker):
                    ker, first_p = k2, p2
        if len(ker) == 1:
            M = _solve_on_support(sampler, exponents, ker[0], gens, variables, basis)
            used = 1
            if M is None:
                M, used = _lift(sampler, exponents, count, ker[0], first_p, gens, variables, basis)
            if M is not None:
                if M.degree_in(uvar(basis.k0)) < 1:
                    raise RetryExhaustedError("eliminating polynomial misses u^(k0): invalid basis")
                return MinimalPolynomial(M, variables, M.total_degree(), count, 1, True,
                                         used, resamples)
        resamples += 1
        if resamples > attempts:
            raise RetryExhaustedError("inconsistent sampling: kernel dimension stays above 1")
        log.debug("degree %d: resampling (kernel dim %d)", D, len(ker))
        sampler.reset()
    raise DegreeCapError(f"degree cap reached ({max_degree})")


def _standard_monomials(sampler: _Sampler, wexps: list) -> list | None:
    """Greedy maximal subset of ``wexps`` that is linearly independent on the variety.

    Scanning left to right, a monomial is kept iff it is not a combination of
    the earlier ones; these are the pivot columns, i.e. everything except the
    last nonzero position of each modular kernel vector.
    """
    count = len(wexps) + EXTRA_SAMPLES
    sampler.ensure(count)
    for p in _PRIMES[:4]:
        ker = _kernel_mod_p(sampler, wexps, count, p)
        if ker is not None:
            free = {max(i for i, x in enumerate(vec) if x) for vec in ker}
            return [e for i, e in enumerate(wexps) if i not in free]
    return None


def lowest_rank_polynomial(sys: ProlongedSystem, basis: Basis, rng: CounterRNG,
                           max_degree: int | None = None,
                           coeff_bound: int = DEFAULT_COEFF_BOUND,
                           attempts: int = DEFAULT_ATTEMPTS,
                           max_monomials: int = MAX_MONOMIALS) -> MinimalPolynomial:
    """Polynomial of least degree in ``u^(k0)`` over all of ``x^[e]`` and ``U``.

    The x-variables outside Z are algebraic over Z, so they can lower the
    degree in ``u^(k0)`` below that of the basis-only minimal polynomial.
    The ansatz uses ``u^(k0)^i * s`` where ``s`` runs over a set of
    x/U-monomials that is independent on the variety, which keeps the
    relations among the x-variables out of the kernel.
    """
    gens = sys.gens
    if max_degree is None:
        max_degree = min(structured_degree_bound(gens), bezout_degree_bound(gens))
    xs = tuple(sorted(DiffVar(k, j) for j in range(1, gens.n + 1) for k in range(gens.e + 1)))
    wvars = xs + tuple(basis.U)
    variables = wvars + (uvar(basis.k0),)
    sampler = _Sampler(gens, variables, rng, coeff_bound, attempts)
    resamples = 0
    D = 1
    while D <= max_degree:
        if monomial_count(len(wvars), D) > max_monomials:
            raise DegreeCapError(
                f"degree cap reached: degree {D} needs more than {max_monomials} monomials"
            )
        standard = _standard_monomials(sampler, [e + (0,) for e in monomial_exponents(len(wvars), D)])
        if standard is None:
            raise RetryExhaustedError("no usable prime for the sample points")
        found = None
        for delta in range(1, D + 1):
            exponents = [s[:-1] + (i,) for i in range(delta + 1) for s in standard
                         if sum(s) + i <= D]
            if len(exponents) > max_monomials:
                raise DegreeCapError(
                    f"degree cap reached: degree {D} needs more than {max_monomials} monomials"
                )
            count = len(exponents) + EXTRA_SAMPLES
            sampler.ensure(count)
            ker = None
            for p in _PRIMES[:4]:
                ker = _kernel_mod_p(sampler, exponents, count, p)
                if ker is not None:
                    break
            if ker:
                found = (exponents, count, ker, p)
                break
        if found is None:
            D += 1
            continue
        exponents, count, ker, p = found
        # every kernel vector is a nonzero multiple of the same minimal
        # relation in u^(k0), so the sparsest one is as good as any
        vec = min(ker, key=lambda v: sum(1 for x in v if x))
        M = _solve_on_support(sampler, exponents, vec, gens, variables, None)
        used = 1
        if M is None:
            M, used = _lift(sampler, exponents, count, vec, p, gens, variables, None)
        if M is not None and M.degree_in(uvar(basis.k0)) >= 1:
            return MinimalPolynomial(M, variables, M.total_degree(), count, len(ker), True,
                                     used, resamples)
        resamples += 1
        if resamples > attempts:
            raise RetryExhaustedError("inconsistent sampling: kernel dimension stays above 1")
        sampler.reset()
    raise DegreeCapError(f"degree cap reached ({max_degree})")


def structured_degree_bound(gens: GeneratorInput) -> int:
    return (gens.n * gens.d * (gens.e + 1) + 1) ** (2 * gens.e + 1)


def bezout_degree_bound(gens: GeneratorInput) -> int:
    return (gens.d + 1) ** ((gens.e + 1) * gens.n)


def _cleared_images(gens: GeneratorInput, M: SparsePoly) -> list:
    out = []
    for v in sorted(M.variables(), reverse=True):
        if v.kind >= 1:
            r = parametrization_derivative(gens, v.kind, v.order)
            out.append((v, r.num, r.den, M.degree_in(v)))
    return out


def _clear(M: SparsePoly, images: list, idx: int = 0) -> SparsePoly:
    """Substitute ``num/den`` for each image variable, times ``den^(deg M in v)``."""
    if idx == len(images) or M.is_zero:
        return M
    v, num, den, top = images[idx]
    parts = M.as_univariate(v)
    den_pows = [SparsePoly.const(1)]
    for _ in range(top):
        den_pows.append(den_pows[-1] * den)
    acc = _clear(parts.get(top, SparsePoly.const(0)), images, idx + 1)
    for i in range(top - 1, -1, -1):
        acc = acc * num
        c = parts.get(i)
        if c is not None:
            acc = acc + _clear(c, images, idx + 1) * den_pows[top - i]
    return acc


def substitute_parametrization(gens: GeneratorInput, M: SparsePoly) -> SparsePoly:
    """``M`` with every x-variable replaced by its parametrization, denominators cleared."""
    return _clear(M, _cleared_images(gens, M))


def vanish_check_symbolic(gens: GeneratorInput, M: SparsePoly, basis: Basis | None = None) -> bool:
    """True iff ``M`` vanishes identically on the parametrized variety."""
    if basis is not None:
        allowed = set(ansatz_variables(basis))
        if not M.variables() <= allowed:
            raise ValueError("M involves variables outside Z, U, u^(k0)")
    return substitute_parametrization(gens, M).is_zero
