"""Exact counts of cyclic numbers and the coefficients of their asymptotic series."""
from .errors import CapacityError, InvariantViolation, QuadratureError
from .kernels import BACKEND
from .precision import PrecReal, euler_gamma, pi_const, zeta
from .primes import PrimeList, primes_up_to, prime_reciprocal_sum, sieve_segment
from .census import (
    CensusRecord,
    count_cyclic,
    enumerate_cyclic,
    is_cyclic,
    is_cyclic_structural,
    totient,
)
from .series import CoefficientTable, TruncatedSeries, cyclic_coeffs, gamma_taylor, ps_exp, ps_log, ps_mul
from .asymptotic import (
    MainTermReport,
    ScalePoint,
    compare_main_terms,
    eval_expansion,
    main_term_integral,
    make_scale,
    make_scale_synthetic,
)
from .diagnostics import classify_standard, lemma3_residual, mertens_residual, sk_census

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CapacityError",
    "CensusRecord",
    "CoefficientTable",
    "InvariantViolation",
    "MainTermReport",
    "PrecReal",
    "PrimeList",
    "QuadratureError",
    "ScalePoint",
    "TruncatedSeries",
    "classify_standard",
    "compare_main_terms",
    "count_cyclic",
    "cyclic_coeffs",
    "enumerate_cyclic",
    "euler_gamma",
    "eval_expansion",
    "gamma_taylor",
    "is_cyclic",
    "is_cyclic_structural",
    "lemma3_residual",
    "main_term_integral",
    "make_scale",
    "make_scale_synthetic",
    "mertens_residual",
    "pi_const",
    "prime_reciprocal_sum",
    "primes_up_to",
    "ps_exp",
    "ps_log",
    "ps_mul",
    "sieve_segment",
    "sk_census",
    "totient",
    "zeta",
]
