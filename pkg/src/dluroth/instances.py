"""Random small generator sets for property tests and benchmarks."""

from __future__ import annotations

from dataclasses import dataclass

from .diffring import uvar
from .errors import DegenerateInputError
from .poly import SparsePoly
from .prolongation import GeneratorInput
from .rng import CounterRNG

MAX_TERMS = 2
COEFF_RANGE = 3


@dataclass(frozen=True)
class RandomInstance:
    n: int
    d: int
    e: int
    gens: GeneratorInput


def _random_monomial(rng: CounterRNG, max_order: int, d: int, need: int | None) -> tuple:
    deg = rng.randint(1, d)
    exps: dict = {}
    slots = [need] if need is not None else []
    while len(slots) < deg:
        slots.append(rng.randint(0, max_order))
    for k in slots:
        v = uvar(k)
        exps[v] = exps.get(v, 0) + 1
    return tuple(sorted(exps.items()))


def _random_poly(rng: CounterRNG, max_order: int, d: int, need: int | None = None) -> SparsePoly:
    terms: dict = {}
    count = rng.randint(1, MAX_TERMS)
    for i in range(count):
        m = _random_monomial(rng, max_order, d, need if i == 0 else None)
        c = 0
        while c == 0:
            c = rng.randint(-COEFF_RANGE, COEFF_RANGE)
        terms[m] = terms.get(m, 0) + c
    # occasional constant term keeps instances away from homogeneous shapes
    if rng.randint(0, 2) == 0:
        terms[()] = rng.randint(1, COEFF_RANGE)
    return SparsePoly(terms)


def random_instance(n: int, d: int, e: int, rng: CounterRNG, max_tries: int = 1000) -> RandomInstance:
    """Sparse ``P_j/Q_j`` with total degree <= d, order <= e and order exactly e for some j."""
    if n < 1 or d < 1 or e < 1:
        raise ValueError("n, d and e must be positive")
    for _ in range(max_tries):
        top = rng.randint(1, n)
        pairs = []
        for j in range(1, n + 1):
            order = e if j == top else rng.randint(0, e)
            p = _random_poly(rng, order, d, need=order)
            if rng.randint(0, 1):
                q = SparsePoly.const(1)
            else:
                q = _random_poly(rng, order, d)
            pairs.append((p, q))
        try:
            gens = GeneratorInput.from_pairs(pairs)
        except DegenerateInputError:
            continue
        if gens.e != e or gens.d > d:
            continue
        return RandomInstance(n, d, e, gens)
    raise RuntimeError("random_instance: no valid instance found")
