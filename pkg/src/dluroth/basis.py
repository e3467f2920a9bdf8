"""Transcendence basis {Z, U} of the function field of the variety.

Independence is decided with the Jacobian criterion: the coordinate
functions are rational in ``u^[2e]``, so a set of them is algebraically
independent iff their gradients with respect to ``u^[2e]`` have full rank,
which is tested exactly at random points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diffring import DiffVar, U, uvar, xvar
from .errors import RetryExhaustedError
from .linalg import ExactMatrix, rank_exact
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


@dataclass(frozen=True)
class Basis:
    Z: tuple
    U: tuple
    k0: int

    @property
    def variables(self) -> tuple:
        return self.Z + self.U

    @property
    def eliminated(self) -> DiffVar:
        """The variable ``u^(k0)`` whose minimal polynomial is sought."""
        return uvar(self.k0)

    def __len__(self) -> int:
        return len(self.Z) + len(self.U)


def candidate_order(gens: GeneratorInput) -> list:
    """x-variables by (order, index), then ``u, u', ..., u^(e)``."""
    xs = [xvar(j, k) for k in range(gens.e + 1) for j in range(1, gens.n + 1)]
    return xs + [uvar(k) for k in range(gens.e + 1)]


class GradientEvaluator:
    """Gradients over ``u^[2e]`` of the coordinate functions, cached symbolically."""

    def __init__(self, gens: GeneratorInput):
        self.gens = gens
        self.size = 2 * gens.e + 1
        self._partials: dict = {}

    def _symbolic(self, v: DiffVar):
        if v not in self._partials:
            r = parametrization_derivative(self.gens, v.kind, v.order)
            num, den = r.num, r.den
            den2 = den * den
            parts = []
            for i in range(self.size):
                w = uvar(i)
                parts.append(num.diff(w) * den - num * den.diff(w))
            self._partials[v] = (parts, den2)
        return self._partials[v]

    def gradient(self, v: DiffVar, values: dict) -> list:
        if v.kind == U:
            return [int(i == v.order) for i in range(self.size)]
        parts, den2 = self._symbolic(v)
        d = Fraction(den2.evaluate(values))
        return [p.evaluate(values) / d for p in parts]


def greedy_basis(gens: GeneratorInput, point, grads: GradientEvaluator | None = None) -> Basis:
    """Greedy selection at one point; may be short at an unlucky point."""
    grads = grads or GradientEvaluator(gens)
    values = u_assignment(point)
    rows: list = []
    rank = 0
    z, us = [], []
    target = 2 * gens.e + 1
    for v in candidate_order(gens):
        if rank == target:
            break
        row = grads.gradient(v, values)
        trial = rank_exact(ExactMatrix.from_rows(rows + [row]))
        if trial > rank:
            rows.append(row)
            rank = trial
            (us if v.kind == U else z).append(v)
    k0 = 0
    taken = {v.order for v in us}
    while k0 in taken:
        k0 += 1
    return Basis(tuple(z), tuple(us), k0)


def select_basis(sys: ProlongedSystem, rng: CounterRNG, coeff_bound: int = DEFAULT_COEFF_BOUND,
                 attempts: int = DEFAULT_ATTEMPTS) -> Basis:
    """Transcendence basis with ``Z`` maximal in ``x^[e]`` and ``U`` in ``u^[e]``.

    A short basis is re-selected at a second point before failing; the
    larger result wins, since a point can only under-estimate rank.
    """
    gens = sys.gens
    grads = GradientEvaluator(gens)
    target = 2 * gens.e + 1
    best = None
    for _ in range(2):
        point = draw_point(gens, rng, coeff_bound, attempts)
        b = greedy_basis(gens, point, grads)
        if len(b) == target:
            return b
        if best is None or len(b) > len(best):
            best = b
    raise RetryExhaustedError(
        f"basis selection failed (unlucky points or invalid input): size {len(best)} != {target}"
    )
