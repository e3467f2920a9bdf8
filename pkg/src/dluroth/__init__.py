"""Lüroth generators of differential rational function fields over Q.

Typical use::

    from dluroth import parse_input, run_pipeline
    res = run_pipeline(parse_input("(u)/(u'); (u + u')"))
    print(res.v)
"""

from .basis import Basis, select_basis
from .diffring import DiffRatFun, DiffVar, derive, order_of, ritt_class, separant_initial
from .errors import (
    DegenerateInputError,
    DegreeCapError,
    InputSyntaxError,
    LurothError,
    OracleDisagreementError,
    OracleUnavailableError,
    RetryExhaustedError,
    SingularPointError,
)
from .gcd import gcd_multivariate
from .groebner import eliminate_groebner
from .implicitize import (
    MinimalPolynomial,
    lowest_rank_polynomial,
    minimal_polynomial,
    vanish_check_symbolic,
)
from .instances import RandomInstance, random_instance
from .linalg import ExactMatrix, nullspace_exact, rank_exact
from .luroth import (
    BoundsReport,
    LurothResult,
    bounds_report,
    homographic_equivalence,
    normalize_generator,
    specialize_minimal_polynomial,
    verify_generator,
)
from .parser import parse_input, render_input
from .pipeline import PipelineResult, RunConfig, run_pipeline, to_json, to_text
from .poly import SparsePoly, render
from .prolongation import (
    GeneratorInput,
    JacobianProfile,
    ProlongedSystem,
    build_system,
    eval_jet,
    jacobian_profile,
    parametrization_derivative,
    prolong,
    prolonged_system,
)
from .rng import CounterRNG

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "select_basis",
    "DiffRatFun",
    "DiffVar",
    "derive",
    "order_of",
    "ritt_class",
    "separant_initial",
    "DegenerateInputError",
    "DegreeCapError",
    "InputSyntaxError",
    "LurothError",
    "OracleDisagreementError",
    "OracleUnavailableError",
    "RetryExhaustedError",
    "SingularPointError",
    "gcd_multivariate",
    "eliminate_groebner",
    "MinimalPolynomial",
    "lowest_rank_polynomial",
    "minimal_polynomial",
    "vanish_check_symbolic",
    "RandomInstance",
    "random_instance",
    "ExactMatrix",
    "nullspace_exact",
    "rank_exact",
    "BoundsReport",
    "LurothResult",
    "bounds_report",
    "homographic_equivalence",
    "normalize_generator",
    "specialize_minimal_polynomial",
    "verify_generator",
    "parse_input",
    "render_input",
    "PipelineResult",
    "RunConfig",
    "run_pipeline",
    "to_json",
    "to_text",
    "SparsePoly",
    "render",
    "GeneratorInput",
    "JacobianProfile",
    "ProlongedSystem",
    "build_system",
    "eval_jet",
    "jacobian_profile",
    "parametrization_derivative",
    "prolong",
    "prolonged_system",
    "CounterRNG",
]
