"""End-to-end driver: input generators in, certified generator out."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .basis import Basis, select_basis
from .diffring import DiffRatFun
from .errors import OracleDisagreementError, RetryExhaustedError
from .groebner import DEFAULT_TIME_LIMIT, eliminate_groebner
from .implicitize import MinimalPolynomial, lowest_rank_polynomial, minimal_polynomial
from .luroth import (
    BoundsReport,
    LurothResult,
    bounds_report,
    normalize_generator,
    specialize_minimal_polynomial,
    verify_generator,
)
from .parser import render_input
from .poly import SparsePoly, render
from .prolongation import (
    DEFAULT_ATTEMPTS,
    DEFAULT_COEFF_BOUND,
    GeneratorInput,
    JacobianProfile,
    draw_point,
    jacobian_profile,
    jacobian_profile_paranoid,
    prolonged_system,
)
from .rng import CounterRNG

ORACLES = ("none", "groebner")
OUTPUTS = ("text", "json")
PARANOID_POINTS = 3
# verification rounds with the basis-only polynomial before refining it
FIRST_ROUNDS = 2


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    verify: bool = True
    oracle: str = "none"
    max_degree: int | None = None
    coeff_bound: int = DEFAULT_COEFF_BOUND
    attempts: int = DEFAULT_ATTEMPTS
    output: str = "text"
    paranoid: bool = False
    timing: bool = False
    oracle_time_limit: float = DEFAULT_TIME_LIMIT
    # test hook: pins the two specialization jets
    forced_points: tuple | None = None

    def __post_init__(self):
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.attempts < 1:
            raise ValueError("attempts must be at least 1")
        if self.coeff_bound < 2:
            raise ValueError("coeff_bound must be at least 2")
        if self.oracle not in ORACLES:
            raise ValueError(f"oracle must be one of {ORACLES}")
        if self.output not in OUTPUTS:
            raise ValueError(f"output must be one of {OUTPUTS}")
        if self.max_degree is not None and self.max_degree < 1:
            raise ValueError("max_degree must be at least 1")


@dataclass(frozen=True)
class PipelineResult:
    gens: GeneratorInput
    config: RunConfig
    bounds: BoundsReport
    profile: JacobianProfile
    basis: Basis
    minimal: MinimalPolynomial
    luroth: LurothResult
    oracle_M: SparsePoly | None = None
    # set when the basis-only polynomial did not yield a certified generator
    refined: MinimalPolynomial | None = None
    seconds: float = field(default=0.0, compare=False)

    @property
    def v(self) -> DiffRatFun:
        return self.luroth.v


def run_pipeline(gens: GeneratorInput, config: RunConfig = RunConfig()) -> PipelineResult:
    start = time.perf_counter()
    root = CounterRNG(config.seed)
    sys = prolonged_system(gens)
    bounds = bounds_report(gens)

    prng = root.child("profile")
    if config.paranoid:
        pts = [draw_point(gens, prng, config.coeff_bound, config.attempts)
               for _ in range(PARANOID_POINTS)]
        profile = jacobian_profile_paranoid(sys, pts)
    else:
        profile = jacobian_profile(sys, draw_point(gens, prng, config.coeff_bound, config.attempts))

    basis = select_basis(sys, root.child("basis"), config.coeff_bound, config.attempts)
    minimal = minimal_polynomial(sys, basis, root.child("implicitize"), config.max_degree,
                                 config.coeff_bound, config.attempts)
    M = minimal.M

    oracle_M = None
    if config.oracle == "groebner":
        oracle_M = eliminate_groebner(sys, basis, config.oracle_time_limit).M
        if not oracle_M.is_proportional(M):
            raise OracleDisagreementError(
                f"oracle disagreement: implicitization gave {render(M)}, "
                f"elimination gave {render(oracle_M)}"
            )

    srng = root.child("specialize")
    result, total = _generator_rounds(gens, sys, M, srng, config, 0, FIRST_ROUNDS)
    refined = None
    if result is None:
        # the basis-only polynomial may have more than the lowest degree in u^(k0);
        # allowing every x-variable up to order e can lower it
        refined = lowest_rank_polynomial(sys, basis, root.child("refine"), config.max_degree,
                                         config.coeff_bound, config.attempts)
        result, total = _generator_rounds(gens, sys, refined.M, srng, config, total,
                                          config.attempts)
    if result is None:
        raise RetryExhaustedError(
            "generator verification failed at every specialization; no polynomial of lower "
            "degree in u^(k0) was found within the degree search")

    return PipelineResult(gens, config, bounds, profile, basis, minimal, result, oracle_M,
                          refined, time.perf_counter() - start)


def _generator_rounds(gens, sys, M, srng, config, total, rounds):
    if config.forced_points is not None:
        rounds = 1
    for _ in range(rounds):
        M1, M2, u1, u2, tries = specialize_minimal_polynomial(
            M, sys, srng, config.forced_points, config.coeff_bound, config.attempts)
        total += tries
        v = normalize_generator(M1, M2)
        if not config.verify:
            return LurothResult(M1, M2, v, u1, u2, None, False, total), total
        ok, gamma = verify_generator(gens, M, v)
        if ok:
            return LurothResult(M1, M2, v, u1, u2, gamma, True, total), total
    return None, total


def _rat(x) -> int | str:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else str(x)


def _ratfun(r: DiffRatFun | None) -> dict | None:
    if r is None:
        return None
    return {"num": render(r.num), "den": render(r.den)}


def to_dict(res: PipelineResult) -> dict:
    g, lr = res.gens, res.luroth
    return {
        "input": {
            "text": render_input(g),
            "generators": [{"num": render(p), "den": render(q)} for p, q in g.pairs],
            "n": g.n,
            "d": g.d,
            "e": g.e,
            "auto_reduced": list(g.auto_reduced),
        },
        "seed": res.config.seed,
        "bounds": {
            "order_bound": res.bounds.order_bound,
            "bezout_bound": res.bounds.bezout_bound,
            "structured_bound": res.bounds.structured_bound,
        },
        "profile": {
            "ranks": list(res.profile.ranks),
            "expected": list(res.profile.expected),
            "matches": res.profile.matches,
        },
        "basis": {
            "Z": [v.name for v in res.basis.Z],
            "U": [v.name for v in res.basis.U],
            "k0": res.basis.k0,
        },
        "M": render(res.minimal.M),
        "M_lowest_rank": None if res.refined is None else render(res.refined.M),
        "M1": render(lr.M1),
        "M2": render(lr.M2),
        "v": _ratfun(lr.v),
        "points": {"u1": [_rat(x) for x in lr.u1], "u2": [_rat(x) for x in lr.u2]},
        "verified": lr.verified,
        "gamma": _ratfun(lr.gamma),
        "oracle": res.config.oracle if res.oracle_M is None else "groebner: agrees",
        "stats": {
            "attempts": lr.attempts,
            "samples": res.minimal.samples,
            "degree": res.minimal.degree,
            "seconds": round(res.seconds, 6) if res.config.timing else None,
        },
    }


def to_json(res: PipelineResult) -> str:
    return json.dumps(to_dict(res), indent=2, ensure_ascii=False) + "\n"


def to_text(res: PipelineResult) -> str:
    d = to_dict(res)
    b, st = d["bounds"], d["stats"]
    prof = d["profile"]
    lines = [
        f"input: {d['input']['text']}",
        f"n = {d['input']['n']}, d = {d['input']['d']}, e = {d['input']['e']}",
        f"bounds: ord(v) <= {b['order_bound']}, deg M <= {b['bezout_bound']} (Bezout), "
        f"deg M <= {b['structured_bound']} (structured)",
        "jacobian ranks: " + " ".join(map(str, prof["ranks"]))
        + ("" if prof["matches"] else "  (expected " + " ".join(map(str, prof["expected"])) + ")"),
        f"basis: Z = {{{', '.join(d['basis']['Z'])}}}, U = {{{', '.join(d['basis']['U'])}}}, "
        f"k0 = {d['basis']['k0']}",
        f"M = {d['M']}",
    ]
    if d["M_lowest_rank"] is not None:
        lines.append(f"M (lowest rank in u) = {d['M_lowest_rank']}")
    lines += [
        f"M1 = {d['M1']}",
        f"M2 = {d['M2']}",
        f"v = {res.luroth.v}",
        "verified: " + ("yes" if d["verified"] else "no (verification disabled)"),
    ]
    if res.oracle_M is not None:
        lines.append("oracle: groebner elimination agrees")
    stats = f"attempts {st['attempts']}, samples {st['samples']}, degree {st['degree']}"
    if st["seconds"] is not None:
        stats += f", {st['seconds']:.3f} s"
    lines.append("stats: " + stats)
    return "\n".join(lines) + "\n"
