"""Matveev's lower bound, the Sanchez-Luca lemma, and the absolute bound chains.

Every bound is computed in interval arithmetic and rounded to the safe side
before it leaves this module: upper bounds go up, lower-bound exponents go
down.  The hand-simplified constants quoted in the literature are kept next to
the re-derived ones; the chains use whichever is larger.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple, Union

from .adaptive import AdaptiveReal
from .algebraic import (
    C_LAMBDA_POLY,
    NARAYANA_POLY,
    dominant_root_alpha,
    log_height,
    narayana_constants,
)
from .errors import DomainError

__all__ = [
    "MatveevInstance",
    "BoundChainReport",
    "MRange",
    "matveev_constant",
    "matveev_lower_bound",
    "sanchez_luca_resolve",
    "relate_m_n",
    "small_k_constants",
    "large_k_constants",
    "small_k_absolute_bounds",
    "large_k_absolute_bounds",
    "n_bound_for_k",
    "LARGE_K_THRESHOLD",
    "PUBLISHED",
]

PREC = 128
LARGE_K_THRESHOLD = 220

# constants as printed in the source derivation
PUBLISHED = {
    "small_matveev_coeff": 2.02e12,
    "small_m_coeff": 3.94e13,
    "small_n_pre_lemma_coeff": 2.82e13,
    "small_log_T_coeff": 49.0,
    "small_n_coeff": 2.77e15,
    "small_max_M": 7e26,
    "large_matveev_coeff": 1.59e13,
    "large_k_log_n_coeff": 4.6e13,
    "large_log_n_coeff": 11.9,
    "large_k_log_k_coeff": 5.48e14,
    "large_k_bound": 3.72e16,
    "large_n_bound": 2.96e86,
    "large_m_bound": 5.92e86,
}

Real = Union[int, float, Fraction, AdaptiveReal]


def _ar(x: Real) -> AdaptiveReal:
    if isinstance(x, AdaptiveReal):
        return x
    if isinstance(x, float):
        x = Fraction(x)
    return AdaptiveReal.exact(x, PREC)


def _up(x: AdaptiveReal) -> float:
    return math.nextafter(float(x.upper), math.inf)


def _down(x: AdaptiveReal) -> float:
    return math.nextafter(float(x.lower), -math.inf)


def _log(x: Real) -> AdaptiveReal:
    return _ar(x).log()


@dataclass(frozen=True)
class MatveevInstance:
    """Parameters (t, D, B, A_1..A_t).  The caller asserts A_i >= max(D h, |log|, 0.16)."""

    t: int
    D: int
    B: Real
    A: Tuple[Real, ...]

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(self.A))
        if self.t < 1 or self.D < 1:
            raise DomainError("need t >= 1 and D >= 1")
        if len(self.A) != self.t:
            raise DomainError(f"expected {self.t} height parameters, got {len(self.A)}")
        if _ar(self.B).lower_fraction() < 1:
            raise DomainError("B must be >= 1")
        for a in self.A:
            if _ar(a).lower_fraction() < Fraction(4, 25):
                raise DomainError(f"A_i must be >= 0.16, got {a}")


def matveev_constant(t: int, D: int, A: Sequence[Real]) -> AdaptiveReal:
    """1.4 * 30^(t+3) * t^4.5 * D^2 * (1 + log D) * prod(A); the (1 + log B) factor excluded."""
    c = AdaptiveReal.exact(Fraction(7, 5) * 30 ** (t + 3) * t ** 4 * D ** 2, PREC)
    c = c * _ar(t).sqrt() * (1 + _log(D))
    for a in A:
        c = c * _ar(a)
    return c


def matveev_lower_bound(inst: MatveevInstance) -> float:
    """Exponent E with |Lambda| >= exp(E); rounded toward -infinity."""
    c = matveev_constant(inst.t, inst.D, inst.A) * (1 + _log(inst.B))
    return _down(-c)


def sanchez_luca_resolve(r: int, C: Real) -> float:
    """Upper bound 2^r C (log C)^r for any a > 1 with a / (log a)^r < C."""
    if r < 1:
        raise DomainError("r must be >= 1")
    c = _ar(C)
    if not c.lower_fraction() > (4 * r * r) ** r:
        raise DomainError(f"need C > (4r^2)^r = {(4 * r * r) ** r}")
    return _up(2 ** r * c * c.log() ** r)


@dataclass(frozen=True)
class MRange:
    """Admissible m for a given n: certified ``[lo, hi]`` and the loosened linear bounds."""

    n: int
    lo: float
    hi: float
    loose_lo: float
    loose_hi: float


def relate_m_n(n: int, alpha: AdaptiveReal, lam: AdaptiveReal) -> MRange:
    """(n-2) log a / log l + 1 <= m <= (n-1) log a / log l + 3.

    Uses alpha^(n-2) <= F_n <= alpha^(n-1) and lambda^(m-3) <= N_m <= lambda^(m-1).
    The sharper lambda^(m-2) <= N_m fails for every m >= 3 (N_3 = 1 < lambda), so
    the upper end carries +3.  ``loose_lo``/``loose_hi`` are the customary linear
    simplifications 1.4n - 1.95 and 1.9n + 0.16; they are informational only.
    """
    if n < 4:
        raise DomainError("relate_m_n needs n >= 4")
    tau = alpha.log() / lam.log()
    lo = (n - 2) * tau + 1
    hi = (n - 1) * tau + 3
    return MRange(n, _down(lo), _up(hi), 1.4 * n - 1.95, 1.9 * n + 0.16)


@dataclass
class BoundChainReport:
    """Outcome of one inequality chain; floats are already rounded to the safe side."""

    stage: str
    k: Optional[int]
    n_bound: float
    m_bound: float
    k_bound: Optional[float] = None
    constants: Dict[str, float] = field(default_factory=dict)
    published: Dict[str, float] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "stage": self.stage,
            "k": self.k,
            "k_bound": self.k_bound,
            "n_bound": self.n_bound,
            "m_bound": self.m_bound,
            "constants": dict(sorted(self.constants.items())),
            "published": dict(sorted(self.published.items())),
        }


def _small_k_constants() -> Dict[str, AdaptiveReal]:
    nc = narayana_constants(PREC)
    log2 = _log(2)
    log_lam = nc.lam.log()
    # eta1 = f_k(alpha)/C_lambda, eta2 = alpha, eta3 = lambda; D = 2k;
    # A1 = 6.6 k log k, A2 = 2 log 2, A3 = k log lambda
    matveev = matveev_constant(3, 1, [Fraction(33, 5), 2 * log2, log_lam])
    # matveev_constant(3, 1, ...) carries (1 + log 1) = 1; the D^2 = 4k^2 factor and
    # (1 + log 2k) < 3.5 log k, 1 + log(2n+2) < 2.2 log n are applied here
    matveev = matveev * 4
    min_x = AdaptiveReal.exact(16, PREC) * _log(2) ** 2 * _log(5)  # min of k^4 log^2 k log n
    # |Lambda_2| < 2 / (C_lambda lambda^2 lambda^m), so m log lambda < E + log(2 / (C_lambda lambda^2))
    slack = (2 / (nc.C_lambda * nc.lam ** 2)).log()
    m_coeff = (matveev * Fraction(35, 10) * Fraction(22, 10) + slack / min_x) / log_lam
    tau_min = dominant_root_alpha(2, PREC).log() / log_lam
    n_pre = m_coeff / tau_min + 2 / min_x
    # log T = log n_pre + 4 log k + 2 log log k <= c log k for k >= 2, worst at k = 2
    l2 = _log(2)
    log_T_coeff = (n_pre.log() + 4 * l2 + 2 * l2.log()) / l2
    n_coeff = 2 * n_pre * log_T_coeff
    return {
        "small_matveev_coeff": matveev,
        "small_m_coeff": m_coeff,
        "small_n_pre_lemma_coeff": n_pre,
        "small_log_T_coeff": log_T_coeff,
        "small_n_coeff_rederived": n_coeff,
        "tau_min": tau_min,
    }


_SMALL_CACHE: Dict[str, AdaptiveReal] = {}


def small_k_constants() -> Dict[str, AdaptiveReal]:
    if not _SMALL_CACHE:
        _SMALL_CACHE.update(_small_k_constants())
    return _SMALL_CACHE


def _n_coeff() -> AdaptiveReal:
    c = small_k_constants()["small_n_coeff_rederived"]
    return c.max_with(Fraction(str(PUBLISHED["small_n_coeff"])))


def n_bound_for_k(k: Real, coeff: Optional[Real] = None) -> float:
    """Upper bound on n (for n >= k + 2) as a function of an upper bound on k."""
    k = _ar(k)
    c = _n_coeff() if coeff is None else _ar(coeff)
    return _up(c * k ** 4 * k.log() ** 3)


def _m_bound_eq14(k: int, n_bound: float) -> float:
    k_ = _ar(k)
    lk = k_.log()
    c = small_k_constants()["small_m_coeff"].max_with(Fraction(str(PUBLISHED["small_m_coeff"])))
    return _up(c * k_ ** 4 * lk ** 2 * _log(Fraction(n_bound)))


def small_k_absolute_bounds(k: int) -> BoundChainReport:
    """n < c k^4 log^3 k, and the Matveev m bound evaluated at that n."""
    if k < 2:
        raise DomainError("k must be >= 2")
    consts = small_k_constants()
    n_bound = n_bound_for_k(k)
    m_bound = _m_bound_eq14(k, n_bound)
    return BoundChainReport(
        stage="small-k",
        k=k,
        n_bound=n_bound,
        m_bound=m_bound,
        constants={name: _up(v) for name, v in consts.items()} | {"small_n_coeff": _up(_n_coeff())},
        published={name: v for name, v in PUBLISHED.items() if name.startswith("small")},
    )


def _large_k_constants() -> Dict[str, AdaptiveReal]:
    nc = narayana_constants(PREC)
    log2 = _log(2)
    log_lam = nc.lam.log()
    h_c = log_height(C_LAMBDA_POLY, PREC)
    h_lam = log_height(NARAYANA_POLY, PREC)
    A1 = (3 * log2).max_with(Fraction(4, 25))
    A2 = (3 * h_c).max_with(abs(nc.C_lambda.log())).max_with(Fraction(4, 25))
    A3 = (3 * h_lam).max_with(log_lam).max_with(Fraction(4, 25))
    matveev = matveev_constant(3, 3, [A1, A2, A3])
    # |Lambda_3| < 3 / 2^(k/2):  (k/2) log 2 - log 3 < 2.2 E log n, log n >= log 5
    k_log_n = 2 * (Fraction(22, 10) * matveev + _log(3) / _log(5)) / log2
    # log n < log c + 4 log k + 3 log log k <= c' log k for k > 220, worst at k = 221
    l221 = _log(LARGE_K_THRESHOLD + 1)
    log_n_coeff = (_n_coeff().log() + 4 * l221 + 3 * l221.log()) / l221
    k_log_k = k_log_n * log_n_coeff
    return {
        "large_A1": A1,
        "large_A2": A2,
        "large_A3": A3,
        "large_matveev_coeff": Fraction(22, 10) * matveev,
        "large_k_log_n_coeff": k_log_n,
        "large_log_n_coeff": log_n_coeff,
        "large_k_log_k_coeff": k_log_k,
    }


_LARGE_CACHE: Dict[str, AdaptiveReal] = {}


def large_k_constants() -> Dict[str, AdaptiveReal]:
    if not _LARGE_CACHE:
        _LARGE_CACHE.update(_large_k_constants())
    return _LARGE_CACHE


def large_k_absolute_bounds() -> BoundChainReport:
    """k < 2 T log T with T the k/log k coefficient, then n and m from k."""
    consts = large_k_constants()
    T = consts["large_k_log_k_coeff"].max_with(Fraction(str(PUBLISHED["large_k_log_k_coeff"])))
    k_bound = max(sanchez_luca_resolve(1, T), PUBLISHED["large_k_bound"])
    n_bound = n_bound_for_k(k_bound)
    m_bound = _up(2 * _ar(n_bound))
    # the 2^(n-2)(1 + zeta) estimate with |zeta| < 2/2^(k/2) requires n < 2^(k/2)
    k0 = LARGE_K_THRESHOLD + 1
    margin = Fraction(k0, 2) * _log(2) - _log(Fraction(n_bound_for_k(k0)))
    slope = 4 / _ar(k0) + 3 / (k0 * _log(k0)) - _log(2) / 2
    reported = {name: _up(v) for name, v in consts.items()}
    reported["zeta_precondition_margin_at_221"] = _down(margin)
    reported["zeta_precondition_slope_at_221"] = _up(slope)
    reported["n_bound_from_published_k"] = n_bound_for_k(
        PUBLISHED["large_k_bound"], Fraction(str(PUBLISHED["small_n_coeff"])))
    return BoundChainReport(
        stage="large-k",
        k=None,
        k_bound=k_bound,
        n_bound=n_bound,
        m_bound=m_bound,
        constants=reported,
        published={name: v for name, v in PUBLISHED.items() if name.startswith("large")},
    )
