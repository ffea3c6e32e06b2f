"""Validated numerics for the equation F_n^(k) = N_m.

k-generalized Fibonacci numbers against Narayana's cows sequence: exact
sequences, certified algebraic constants, Matveev bounds, Baker-Davenport
reduction, exhaustive search, and a checkable certificate of the whole run.
"""

__version__ = "0.1.0"

from .adaptive import AdaptiveReal, refine
from .algebraic import AlgebraicNumber, dominant_root_alpha, log_height, narayana_constants
from .errors import DomainError, PrecisionError, ReductionFailed, VerificationError
from .reduction import ReductionOutcome, ReductionProblem, baker_davenport, continued_fraction
from .search import Solution, intersect_bruteforce, narayana_powers_of_two, verify_theorem2
from .sequences import k_fib, narayana, seq_iter

__all__ = [
    "__version__",
    "AdaptiveReal",
    "refine",
    "AlgebraicNumber",
    "dominant_root_alpha",
    "log_height",
    "narayana_constants",
    "DomainError",
    "PrecisionError",
    "ReductionFailed",
    "VerificationError",
    "ReductionProblem",
    "ReductionOutcome",
    "baker_davenport",
    "continued_fraction",
    "Solution",
    "intersect_bruteforce",
    "narayana_powers_of_two",
    "verify_theorem2",
    "k_fib",
    "narayana",
    "seq_iter",
]
