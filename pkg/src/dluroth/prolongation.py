"""The system F_j = Q_j x_j - P_j, its prolongation, and jet evaluation.

Points are jets ``(u, u', ..., u^(2e))`` given as rational sequences of
length ``2e + 1``.  Vectors of x-values are laid out by derivative order
first: ``(x1, ..., xn, x1', ..., xn', ...)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Sequence

from .diffring import U, DiffRatFun, derive, order_of, uvar, xvar
from .errors import DegenerateInputError, RetryExhaustedError, SingularPointError
from .linalg import ExactMatrix, rank_exact
from .poly import SparsePoly
from .rng import CounterRNG

DEFAULT_COEFF_BOUND = 2 ** 15
DEFAULT_ATTEMPTS = 20


@dataclass(frozen=True, eq=False)
class GeneratorInput:
    """Reduced generator pairs ``(P_j, Q_j)`` in ``u`` only.

    Build with :meth:`from_pairs`, which validates and reduces.
    """

    pairs: tuple
    auto_reduced: tuple = ()

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple]) -> "GeneratorInput":
        if not pairs:
            raise DegenerateInputError("at least one generator is required")
        reduced = []
        flags = []
        for j, (p, q) in enumerate(pairs, start=1):
            for poly in (p, q):
                if any(v.kind != U for v in poly.variables()):
                    raise DegenerateInputError(f"generator {j} involves variables other than u")
            if q.is_zero:
                raise DegenerateInputError(f"zero denominator in generator {j}")
            r = DiffRatFun.make(p, q)
            if r.is_constant():
                raise DegenerateInputError(f"constant generator {j}")
            flags.append(not (r.num.is_proportional(p) and r.den.is_proportional(q)))
            reduced.append((r.num, r.den))
        gens = cls(tuple(reduced), tuple(flags))
        if gens.e == 0:
            raise DegenerateInputError("purely algebraic input unsupported (e = 0)")
        return gens

    @property
    def n(self) -> int:
        return len(self.pairs)

    @cached_property
    def orders(self) -> tuple:
        out = []
        for p, q in self.pairs:
            a, b = order_of(p), order_of(q)
            out.append(max(x for x in (a, b, 0) if x is not None))
        return tuple(out)

    @property
    def e(self) -> int:
        return max(self.orders)

    @property
    def d(self) -> int:
        return max(max(p.total_degree(), q.total_degree()) for p, q in self.pairs)

    @cached_property
    def q(self) -> SparsePoly:
        out = SparsePoly.const(1)
        for _, qj in self.pairs:
            out = out * qj
        return out

    @cached_property
    def raw_derivatives(self) -> tuple:
        """``R[j-1][k]`` with ``(P_j/Q_j)^(k) = R_jk / Q_j^(k+1)`` for ``0 <= k <= e``."""
        out = []
        for p, q in self.pairs:
            dq = derive(q)
            rows = [p]
            for k in range(self.e):
                r = rows[-1]
                rows.append(derive(r) * q - (k + 1) * r * dq)
            out.append(tuple(rows))
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, GeneratorInput):
            return NotImplemented
        return self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)


@dataclass(frozen=True, eq=False)
class ProlongedSystem:
    """``layers[k][j-1] = F_j^(k)``; ``q`` is the product of the denominators."""

    gens: GeneratorInput
    layers: tuple
    q: SparsePoly

    @property
    def n(self) -> int:
        return self.gens.n

    @property
    def e(self) -> int:
        return self.gens.e

    @property
    def is_complete(self) -> bool:
        return len(self.layers) == self.e + 1


def build_system(gens: GeneratorInput) -> ProlongedSystem:
    layer0 = tuple(q * SparsePoly.var(xvar(j)) - p for j, (p, q) in enumerate(gens.pairs, start=1))
    return ProlongedSystem(gens, (layer0,), gens.q)


def prolong(sys: ProlongedSystem) -> ProlongedSystem:
    layers = list(sys.layers[:1])
    for _ in range(sys.e):
        layers.append(tuple(derive(f) for f in layers[-1]))
    return ProlongedSystem(sys.gens, tuple(layers), sys.q)


def prolonged_system(gens: GeneratorInput) -> ProlongedSystem:
    return prolong(build_system(gens))


def parametrization_derivative(gens: GeneratorInput, j: int, k: int) -> DiffRatFun:
    """``(P_j/Q_j)^(k)`` as a reduced rational function of ``u`` (``j`` is 1-based)."""
    if not 1 <= j <= gens.n or not 0 <= k <= gens.e:
        raise ValueError("index out of range")
    p, q = gens.pairs[j - 1]
    return DiffRatFun.make(gens.raw_derivatives[j - 1][k], q ** (k + 1))


def u_assignment(point: Sequence) -> dict:
    return {uvar(i): v for i, v in enumerate(point)}


def _check_point(gens: GeneratorInput, point: Sequence) -> dict:
    if len(point) != 2 * gens.e + 1:
        raise ValueError(f"jet must have length {2 * gens.e + 1}")
    values = u_assignment(point)
    if gens.q.evaluate(values) == 0:
        raise SingularPointError("singular specialization point: q vanishes")
    return values


def eval_jet(gens: GeneratorInput, point: Sequence) -> list:
    """Values of ``x^[e]`` on the variety above the jet ``point``."""
    values = _check_point(gens, point)
    qvals = [Fraction(q.evaluate(values)) for _, q in gens.pairs]
    out = []
    for k in range(gens.e + 1):
        for j in range(gens.n):
            r = gens.raw_derivatives[j][k].evaluate(values)
            out.append(r / qvals[j] ** (k + 1))
    return out


def jet_values(gens: GeneratorInput, point: Sequence) -> dict:
    """Full assignment ``{var: value}`` for ``u^[2e]`` and ``x^[e]``."""
    xs = eval_jet(gens, point)
    values = u_assignment(point)
    n = gens.n
    for idx, val in enumerate(xs):
        k, j = divmod(idx, n)
        values[xvar(j + 1, k)] = val
    return values


def solve_jet_linear(sys: ProlongedSystem, point: Sequence) -> list:
    """Same values as :func:`eval_jet`, obtained by solving the prolonged
    system layer by layer (each layer is linear in its top x-derivatives)."""
    values = _check_point(sys.gens, point)
    out = []
    for k, layer in enumerate(sys.layers):
        for j, f in enumerate(layer, start=1):
            x = xvar(j, k)
            rest = f.substitute(values)
            coeff = Fraction(rest.diff(x).constant_value())
            const = rest.substitute({x: 0}).constant_value()
            values[x] = -const / coeff
            out.append(values[x])
    return out


def draw_point(gens: GeneratorInput, rng: CounterRNG, coeff_bound: int = DEFAULT_COEFF_BOUND,
               attempts: int = DEFAULT_ATTEMPTS) -> tuple:
    """Random integer jet with ``q != 0``; redraws at most ``attempts`` times."""
    size = 2 * gens.e + 1
    for _ in range(attempts):
        point = tuple(rng.randint(-coeff_bound, coeff_bound) for _ in range(size))
        if gens.q.evaluate(u_assignment(point)) != 0:
            return point
    raise RetryExhaustedError("could not draw a point off the locus q = 0")


@dataclass(frozen=True)
class JacobianProfile:
    ranks: tuple
    point: tuple
    expected: tuple = field(default=())

    @property
    def matches(self) -> bool:
        return self.ranks == self.expected


def expected_profile(e: int, n: int) -> tuple:
    return tuple(range(1, e + 1)) + (e + n,)


def _jacobian_rows(sys: ProlongedSystem, k: int, values: dict) -> list:
    e, n = sys.e, sys.n
    cols = []
    for l in range(e, e + k):
        cols.extend(xvar(j, l) for j in range(1, n + 1))
        cols.append(uvar(l))
    rows = []
    for i in range(k):
        for f in sys.layers[i]:
            rows.append([f.diff(v).evaluate(values) for v in cols])
    return rows


def jacobian_matrix(sys: ProlongedSystem, k: int, point: Sequence) -> ExactMatrix:
    """The Jacobian of ``F, ..., F^(k-1)`` in ``(x,u)^(e), ..., (x,u)^(e+k-1)`` at the jet."""
    values = jet_values(sys.gens, point)
    return ExactMatrix.from_rows(_jacobian_rows(sys, k, values))


def jacobian_profile(sys: ProlongedSystem, point: Sequence) -> JacobianProfile:
    if not sys.is_complete:
        sys = prolong(sys)
    values = jet_values(sys.gens, point)
    ranks = tuple(
        rank_exact(ExactMatrix.from_rows(_jacobian_rows(sys, k, values)))
        for k in range(1, sys.e + 2)
    )
    return JacobianProfile(ranks, tuple(point), expected_profile(sys.e, sys.n))


def jacobian_profile_paranoid(sys: ProlongedSystem, points: Sequence) -> JacobianProfile:
    """Profile from several points: entrywise maximum, since evaluation can only drop rank."""
    profiles = [jacobian_profile(sys, pt) for pt in points]
    ranks = tuple(max(ps) for ps in zip(*(p.ranks for p in profiles)))
    return JacobianProfile(ranks, profiles[0].point, profiles[0].expected)


def differentiation_index(profile: JacobianProfile, n: int) -> int | None:
    """Least ``k >= 1`` with ``rank J_(k+1) - rank J_k = n``."""
    r = profile.ranks
    for k in range(1, len(r)):
        if r[k] - r[k - 1] == n:
            return k
    return None


def x_block_jacobian(sys: ProlongedSystem, i: int) -> list:
    """Symbolic Jacobian of ``F^[i-1]`` with respect to ``x^[i-1]``."""
    cols = [xvar(j, l) for l in range(i) for j in range(1, sys.n + 1)]
    return [[f.diff(v) for v in cols] for layer in sys.layers[:i] for f in layer]


def x_jacobian_entry_expected(gens: GeneratorInput, j: int, k: int, h: int, l: int) -> SparsePoly:
    """``dF_j^(k)/dx_h^(l)``: ``C(k,l) Q_j^(k-l)`` when ``h = j`` and ``l <= k``, else 0."""
    if h != j or l > k:
        return SparsePoly.const(0)
    q = gens.pairs[j - 1][1]
    for _ in range(k - l):
        q = derive(q)
    return q.scale(comb(k, l))


def all_variables(gens: GeneratorInput) -> list:
    """``x^[e]`` then ``u^[2e]``, in the global variable order."""
    xs = [xvar(j, k) for k in range(gens.e + 1) for j in range(1, gens.n + 1)]
    us = [uvar(i) for i in range(2 * gens.e + 1)]
    return xs + us

