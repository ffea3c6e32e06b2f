"""Certified continued fractions and the Baker-Davenport (Dujella-Petho) reduction.

The reduction concerns inequalities

    0 < |u*tau - v + mu| < A * B**(-w),    1 <= u <= M,

where ``w`` is the exponent being bounded.  For any positive integer q,

    q |u tau - v + mu| >= ||q mu|| - u ||q tau|| >= ||q mu|| - M ||q tau|| = eps,

so eps > 0 forces A B^-w > eps / q, i.e. w < log(A q / eps) / log B.  A
convergent denominator q > 6M is the usual way to make eps positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import List, Optional, Sequence, Tuple, Union

from .adaptive import DEFAULT_PREC, AdaptiveReal, RealSource, coerce
from .algebraic import dominant_root_alpha, f_k_alpha, narayana_constants
from .errors import DomainError, PrecisionError, ReductionFailed

__all__ = [
    "ContinuedFraction",
    "ReductionProblem",
    "ReductionOutcome",
    "cf_of_fraction",
    "convergents",
    "continued_fraction",
    "nearest_int_distance",
    "epsilon_for",
    "baker_davenport",
    "linear_form_from_gamma",
    "tau_small_k",
    "mu_small_k",
    "A_small_k",
    "tau_large_k",
    "mu_large_k",
    "mu_power_of_two",
    "A_large_k",
    "A_power_of_two",
    "lambda_source",
    "small_k_problem",
    "large_k_problem",
    "power_of_two_problem",
]

RealLike = Union[int, float, Fraction, AdaptiveReal, RealSource]


def cf_of_fraction(x: Fraction, max_terms: Optional[int] = None) -> List[int]:
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    out = []
    while den and (max_terms is None or len(out) < max_terms):
        a, r = divmod(num, den)
        out.append(a)
        num, den = den, r
    return out


def convergents(quotients: Sequence[int]) -> List[Tuple[int, int]]:
    p0, q0, p1, q1 = 1, 0, 0, 1
    out = []
    for a in quotients:
        p0, q0, p1, q1 = a * p0 + p1, a * q0 + q1, p0, q0
        out.append((p0, q0))
    return out


@dataclass(frozen=True)
class ContinuedFraction:
    partial_quotients: Tuple[int, ...]
    convergents: Tuple[Tuple[int, int], ...]
    exact: bool = False  # True when the value is rational and the expansion ended
    precision: int = 0

    @property
    def denominators(self) -> Tuple[int, ...]:
        return tuple(q for _, q in self.convergents)


def _certified_prefix(x: AdaptiveReal, max_terms: int) -> Tuple[List[int], bool]:
    lo, hi = x.lower_fraction(), x.upper_fraction()
    if lo == hi:
        return cf_of_fraction(lo, max_terms), True
    cl = cf_of_fraction(lo, max_terms + 2)
    ch = cf_of_fraction(hi, max_terms + 2)
    common = 0
    for a, b in zip(cl, ch):
        if a != b:
            break
        common += 1
    # a quotient is only certified if neither endpoint's expansion stops there
    if common == len(cl) or common == len(ch):
        common -= 1
    return cl[:max(0, min(common, max_terms))], False


def continued_fraction(x: Union[int, Fraction, AdaptiveReal, RealSource], terms: int,
                       start_prec: int = DEFAULT_PREC, max_prec: int = 16384) -> ContinuedFraction:
    """The first ``terms`` partial quotients, each shared by every point of the enclosure.

    ``x`` may be an exact rational (a zero-width enclosure), a fixed enclosure,
    or a source ``prec -> AdaptiveReal`` that is refined (precision doubled)
    until enough terms are certified.
    """
    if terms < 1:
        raise DomainError("terms must be >= 1")
    if isinstance(x, (int, Fraction)):
        quotients = cf_of_fraction(Fraction(x), terms)
        return ContinuedFraction(tuple(quotients), tuple(convergents(quotients)), True, 0)
    prec = start_prec
    while True:
        enc = x if isinstance(x, AdaptiveReal) else x(prec)
        quotients, exact = _certified_prefix(enc, terms)
        if exact or len(quotients) >= terms:
            quotients = quotients[:terms]
            return ContinuedFraction(tuple(quotients), tuple(convergents(quotients)), exact, enc.prec)
        if isinstance(x, AdaptiveReal) or prec * 2 > max_prec:
            raise PrecisionError(
                f"only {len(quotients)} of {terms} partial quotients certified at {enc.prec} bits")
        prec *= 2


def nearest_int_distance(x: AdaptiveReal) -> AdaptiveReal:
    """Enclosure of ||x||, the distance to the nearest integer."""
    lo, hi = x.lower_fraction(), x.upper_fraction()

    def dist(t: Fraction) -> Fraction:
        f = t - math.floor(t)
        return min(f, 1 - f)

    if hi - lo >= 1:
        return AdaptiveReal.from_bounds(0, Fraction(1, 2), x.prec)
    has_int = math.floor(hi) >= lo
    half = math.floor(hi - Fraction(1, 2)) + Fraction(1, 2)
    has_half = half >= lo
    d_lo, d_hi = dist(lo), dist(hi)
    low = Fraction(0) if has_int else min(d_lo, d_hi)
    high = Fraction(1, 2) if has_half else max(d_lo, d_hi)
    return AdaptiveReal.from_bounds(low, high, x.prec)


@dataclass(frozen=True)
class ReductionProblem:
    """0 < |u tau - v + mu| < A B^-w with u <= M."""

    tau: RealLike
    mu: RealLike
    A: RealLike
    B: RealLike
    M: int
    label: str = ""

    def __post_init__(self):
        if int(self.M) < 1:
            raise DomainError("M must be a positive integer")
        object.__setattr__(self, "M", int(self.M))


@dataclass(frozen=True)
class ReductionOutcome:
    q: int
    p: int
    index: int  # 0-based: convergent i uses partial quotients a_0..a_i
    epsilon: AdaptiveReal
    exponent_bound: AdaptiveReal  # w < this
    u_bound: int  # floor of the upper end of exponent_bound
    precision: int
    M: int

    def to_json(self) -> dict:
        return {
            "q": str(self.q),
            "p": str(self.p),
            "index": self.index,
            "M": str(self.M),
            "epsilon": self.epsilon.to_json(),
            "exponent_bound": self.exponent_bound.to_json(),
            "u_bound": self.u_bound,
            "precision": self.precision,
        }


def epsilon_for(prob: ReductionProblem, q: int, prec: int) -> Tuple[AdaptiveReal, Optional[AdaptiveReal]]:
    """eps = ||mu q|| - M ||tau q|| and, when eps > 0, the bound log(A q / eps) / log B.

    Works for any positive integer q; being a convergent only makes eps likely positive.
    """
    tau = coerce(prob.tau, prec)
    mu = coerce(prob.mu, prec)
    eps = nearest_int_distance(mu * q) - prob.M * nearest_int_distance(tau * q)
    if not eps.is_positive():
        return eps, None
    A = coerce(prob.A, prec)
    B = coerce(prob.B, prec)
    log_b = B.log()
    if not log_b.is_positive():
        raise PrecisionError("log B not certified positive")
    bound = (A * q / eps).log() / log_b
    return eps, bound


def baker_davenport(prob: ReductionProblem, start_prec: int = DEFAULT_PREC,
                    max_prec: int = 16384, max_terms: int = 4000) -> ReductionOutcome:
    """First convergent q > 6M with certified eps > 0, and the resulting exponent bound.

    Conclusion: no solution with ``u <= M`` has ``w > u_bound``.
    """
    prec = start_prec
    threshold = 6 * prob.M
    while True:
        tau = coerce(prob.tau, prec)
        quotients, exact = _certified_prefix(tau, max_terms)
        undecided = False
        for i, (p, q) in enumerate(convergents(quotients)):
            if q <= threshold:
                continue
            eps, bound = epsilon_for(prob, q, prec)
            if bound is not None:
                return ReductionOutcome(q, p, i, eps, bound, bound.floor_of_upper(), prec, prob.M)
            if eps.is_negative() or eps.upper_fraction() <= 0:
                continue
            undecided = True
            break
        if exact and not undecided:
            raise ReductionFailed("tau is rational and its expansion is exhausted")
        if prec * 2 > max_prec:
            raise ReductionFailed(
                f"no convergent with certified eps > 0 up to {prec} bits ({prob.label or 'problem'})")
        prec *= 2


# ---------------------------------------------------------------------------
# the concrete linear forms


def lambda_source(prec: int) -> AdaptiveReal:
    return narayana_constants(prec).lam


def tau_small_k(k: int, prec: int) -> AdaptiveReal:
    """log alpha(k) / log lambda."""
    return dominant_root_alpha(k, prec).log() / narayana_constants(prec).lam.log()


def mu_small_k(k: int, prec: int) -> AdaptiveReal:
    """log(f_k(alpha) / (C_lambda lambda^2)) / log lambda."""
    nc = narayana_constants(prec)
    alpha = dominant_root_alpha(k, prec)
    return (f_k_alpha(k, alpha) / (nc.C_lambda * nc.lam ** 2)).log() / nc.lam.log()


def A_small_k(prec: int) -> AdaptiveReal:
    """|Lambda| < 2/(C lambda^2) lambda^-m, doubled for the negative branch, over log lambda."""
    nc = narayana_constants(prec)
    return 4 / (nc.C_lambda * nc.lam ** 2 * nc.lam.log())


def tau_large_k(prec: int) -> AdaptiveReal:
    """log lambda / log 2."""
    return narayana_constants(prec).lam.log() / AdaptiveReal.exact(2, prec).log()


def mu_power_of_two(prec: int) -> AdaptiveReal:
    """(2 log lambda + log C_lambda) / log 2."""
    nc = narayana_constants(prec)
    return (nc.C_lambda * nc.lam ** 2).log() / AdaptiveReal.exact(2, prec).log()


def mu_large_k(prec: int) -> AdaptiveReal:
    """(2 log lambda + 2 log 2 + log C_lambda) / log 2; equals mu_power_of_two + 2."""
    return mu_power_of_two(prec) + 2


def A_large_k(prec: int) -> AdaptiveReal:
    """|Lambda| < 3 / 2^(k/2), doubled, over log 2."""
    return 6 / AdaptiveReal.exact(2, prec).log()


def A_power_of_two(prec: int) -> AdaptiveReal:
    """|Lambda| < 1 / 2^l, doubled, over log 2."""
    return 2 / AdaptiveReal.exact(2, prec).log()


def small_k_problem(k: int, M: int) -> ReductionProblem:
    return ReductionProblem(partial(tau_small_k, k), partial(mu_small_k, k), A_small_k,
                            lambda_source, M, label=f"small-k k={k}")


def large_k_problem(M: int, label: str = "large-k") -> ReductionProblem:
    return ReductionProblem(tau_large_k, mu_large_k, A_large_k, 2, M, label=label)


def power_of_two_problem(M: int) -> ReductionProblem:
    return ReductionProblem(tau_large_k, mu_power_of_two, A_power_of_two, 2, M, label="powers of two")


def linear_form_from_gamma(kind: str, n: int, m: int, k: Optional[int] = None,
                           prec: int = DEFAULT_PREC) -> AdaptiveReal:
    """The normalized linear form for given indices.

    ``small-k``: (n-1) tau_k - m + mu_k, the logarithm of
    C^-1 f_k(alpha) alpha^(n-1) lambda^-(m+2) divided by log lambda.
    ``large-k``: m tau - n + mu, the logarithm of 2^-(n-2) C lambda^(m+2) over log 2.
    """
    if kind == "small-k":
        if k is None:
            raise DomainError("small-k form needs k")
        return (n - 1) * tau_small_k(k, prec) - m + mu_small_k(k, prec)
    if kind == "large-k":
        return m * tau_large_k(prec) - n + mu_large_k(prec)
    raise DomainError(f"unknown form kind {kind!r}")
