"""Certified algebraic constants: dominant roots, companion constants, heights.

Polynomials are integer coefficient sequences, leading coefficient first:
``(1, -1, 0, -1)`` is x^3 - x^2 - 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Sequence, Tuple

import mpmath

from .adaptive import DEFAULT_PREC, AdaptiveReal
from .errors import DomainError, PrecisionError

__all__ = [
    "AlgebraicNumber",
    "NarayanaConstants",
    "NARAYANA_POLY",
    "C_LAMBDA_POLY",
    "psi_coefficients",
    "poly_sign",
    "dominant_root_alpha",
    "narayana_lambda",
    "narayana_constants",
    "f_k_alpha",
    "log_height",
    "alpha_height_closed_form",
    "certified_log",
    "MAX_HEIGHT_DEGREE",
]

NARAYANA_POLY: Tuple[int, ...] = (1, -1, 0, -1)
C_LAMBDA_POLY: Tuple[int, ...] = (31, -31, 10, -1)
MAX_HEIGHT_DEGREE = 64


def psi_coefficients(k: int) -> Tuple[int, ...]:
    """x^k - x^(k-1) - ... - x - 1."""
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    return (1,) + (-1,) * k


def poly_sign(coeffs: Sequence[int], x: Fraction) -> int:
    """Exact sign of the polynomial at a rational point."""
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    d = len(coeffs) - 1
    terms = [(i, c) for i, c in enumerate(coeffs) if c]
    if 4 * len(terms) < d:
        # sparse: sum c_i num^(d-i) den^i with a handful of big powers
        acc = sum(c * num ** (d - i) * den ** i for i, c in terms)
    else:
        acc = coeffs[0]
        dpow = 1
        for c in coeffs[1:]:
            dpow *= den
            acc = acc * num + c * dpow
    return (acc > 0) - (acc < 0)


def _sign_poly(coeffs: Tuple[int, ...], lo: Fraction) -> Tuple[int, ...]:
    """A polynomial with the same sign as ``coeffs`` on [lo, oo), cheaper to evaluate.

    For Psi_k and lo > 1 this is (x - 1) Psi_k(x) = x^(k+1) - 2 x^k + 1.
    """
    k = len(coeffs) - 1
    if k >= 8 and lo > 1 and coeffs == psi_coefficients(k):
        return (1, -2) + (0,) * (k - 1) + (1,)
    return coeffs


def _normalize(coeffs: Sequence[int]) -> Tuple[int, ...]:
    coeffs = [int(c) for c in coeffs]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    if len(coeffs) < 2:
        raise DomainError("polynomial must have degree >= 1")
    g = reduce(math.gcd, coeffs)
    if coeffs[0] < 0:
        g = -g
    return tuple(c // g for c in coeffs)


def _evaluator(coeffs):
    """(p, p') evaluators for mpmath numbers; sparse polynomials use powers."""
    d = len(coeffs) - 1
    terms = [(d - i, c) for i, c in enumerate(coeffs) if c]
    if 4 * len(terms) >= d:
        deriv = [c * (d - i) for i, c in enumerate(coeffs[:-1])]
        return (lambda x: mpmath.polyval(coeffs, x)), (lambda x: mpmath.polyval(deriv, x))

    def f(x):
        return mpmath.fsum(c * x ** e for e, c in terms)

    def df(x):
        return mpmath.fsum(c * e * x ** (e - 1) for e, c in terms if e)

    return f, df


def _approx_root(coeffs, a: mpmath.mpf, b: mpmath.mpf, sa: int, wp: int) -> mpmath.mpf:
    """Safeguarded Newton inside a sign-change bracket, at ``wp`` bits."""
    f, df = _evaluator(coeffs)
    with mpmath.workprec(wp):
        a, b = mpmath.mpf(a), mpmath.mpf(b)
        x = (a + b) / 2
        tol = mpmath.ldexp(1, -wp + 4)
        for _ in range(4 * wp):
            fx = f(x)
            if fx == 0:
                return x
            s = 1 if fx > 0 else -1
            if s == sa:
                a = x
            else:
                b = x
            dfx = df(x)
            if dfx != 0:
                step = fx / dfx
                if abs(step) < tol * max(1, abs(x)):
                    return x - step
                nxt = x - step
                if min(a, b) < nxt < max(a, b):
                    x = nxt
                    continue
            if abs(b - a) < tol:
                return x
            x = (a + b) / 2
        return x


@lru_cache(maxsize=4096)
def _root_enclosure(coeffs: Tuple[int, ...], lo: Fraction, hi: Fraction, prec: int):
    sign_poly = _sign_poly(coeffs, lo)
    k = len(coeffs) - 1
    if sign_poly is not coeffs and lo == 2 - Fraction(2, 2 ** k) and hi == 2:
        # g(x) = x^k (x - 2) + 1: g(2) = 1, and at x = 2(1 - 2^-k) Bernoulli gives
        # x^k >= 2^k - k > 2^(k-1), so g(x) = 1 - 2^(1-k) x^k < 0.  Evaluating the
        # k-bit endpoint exactly would cost ~k^2 bits.
        s_lo, s_hi = -1, 1
    else:
        s_lo, s_hi = poly_sign(sign_poly, lo), poly_sign(sign_poly, hi)
    if s_lo == 0:
        return lo, lo
    if s_hi == 0:
        return hi, hi
    if s_lo == s_hi:
        raise DomainError(f"no sign change on isolating interval [{lo}, {hi}]")
    if hi - lo <= Fraction(1, 2 ** prec):
        return lo, hi
    # evaluation near a root cancels about deg * log2|x| bits
    mag = max(abs(lo), abs(hi), Fraction(1))
    guard = (len(coeffs) - 1) * (math.ceil(math.log2(mag)) + 1) + 32
    with mpmath.workprec(prec + guard):
        a0 = mpmath.mpf(lo.numerator) / lo.denominator
        b0 = mpmath.mpf(hi.numerator) / hi.denominator
    x = _approx_root(sign_poly, a0, b0, s_lo, prec + guard)
    p, q = mpmath.libmp.to_rational(x._mpf_)
    xm = Fraction(int(p), int(q))
    delta = Fraction(1, 2 ** (prec + 1))
    # short dyadic test points keep the exact evaluations cheap; radius stays <= 2^-prec
    grid = 2 ** (prec + 2)
    left = max(lo, Fraction(math.floor((xm - delta) * grid), grid))
    right = min(hi, Fraction(math.ceil((xm + delta) * grid), grid))
    left_ok = left == lo or poly_sign(sign_poly, left) == s_lo
    if left_ok and (right == hi or poly_sign(sign_poly, right) == s_hi):
        return left, right
    # Newton landed badly: exact bisection is slow but cannot fail
    a, b = lo, hi
    width = Fraction(1, 2 ** prec)
    while b - a > width:
        mid = (a + b) / 2
        s = poly_sign(sign_poly, mid)
        if s == 0:
            return mid, mid
        if s == s_lo:
            a = mid
        else:
            b = mid
    return a, b


@dataclass(frozen=True)
class AlgebraicNumber:
    """A real root of an integer polynomial, pinned by an isolating interval."""

    minpoly: Tuple[int, ...]
    isolating_interval: Tuple[Fraction, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "minpoly", _normalize(self.minpoly))
        lo, hi = (Fraction(v) for v in self.isolating_interval)
        if lo > hi:
            raise DomainError("isolating interval is reversed")
        object.__setattr__(self, "isolating_interval", (lo, hi))

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    def enclosure(self, prec: int = DEFAULT_PREC) -> AdaptiveReal:
        """Certified enclosure with radius at most 2^-prec."""
        lo, hi = self.isolating_interval
        a, b = _root_enclosure(self.minpoly, lo, hi, prec)
        # the dyadic endpoints need prec + log2|x| + a few mantissa bits to stay exact
        mag = max(abs(a), abs(b), Fraction(1))
        exact = AdaptiveReal.from_bounds(a, b, prec + math.ceil(math.log2(mag)) + 8)
        return AdaptiveReal(exact._lo, exact._hi, prec)

    def height(self, prec: int = DEFAULT_PREC) -> AdaptiveReal:
        return log_height(self.minpoly, prec)


def dominant_root_alpha(k: int, prec: int = DEFAULT_PREC) -> AdaptiveReal:
    """The root of Psi_k in (2(1 - 2^-k), 2)."""
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    lo = 2 * (1 - Fraction(1, 2 ** k))
    return AlgebraicNumber(psi_coefficients(k), (lo, Fraction(2))).enclosure(prec)


def narayana_lambda(prec: int = DEFAULT_PREC) -> AdaptiveReal:
    return AlgebraicNumber(NARAYANA_POLY, (Fraction(1), Fraction(2))).enclosure(prec)


@dataclass(frozen=True)
class NarayanaConstants:
    """lambda, C_lambda = 1/(lambda^3 + 2) and |C_beta| = |C_gamma|.

    The other constants of the Binet form, a = lambda/((lambda-beta)(lambda-gamma))
    and its conjugates, equal C_x * x^2 and are not needed separately.
    """

    lam: AdaptiveReal
    C_lambda: AdaptiveReal
    C_beta_abs: AdaptiveReal

    @property
    def log_lambda(self) -> AdaptiveReal:
        return self.lam.log()


@lru_cache(maxsize=64)
def narayana_constants(prec: int = DEFAULT_PREC) -> NarayanaConstants:
    if prec < 64:
        raise DomainError("narayana_constants needs at least 64 bits")
    lam = narayana_lambda(prec)
    c_lam = 1 / (lam ** 3 + 2)
    # C_lambda * C_beta * C_gamma = 1/31 and C_gamma = conj(C_beta)
    c_beta_abs = (1 / (31 * c_lam)).sqrt()
    return NarayanaConstants(lam, c_lam, c_beta_abs)


def f_k_alpha(k: int, alpha: AdaptiveReal) -> AdaptiveReal:
    """(alpha - 1) / (2 + (k+1)(alpha - 2))."""
    return (alpha - 1) / (2 + (k + 1) * (alpha - 2))


def certified_log(x: AdaptiveReal) -> AdaptiveReal:
    return x.log()


def alpha_height_closed_form(k: int, prec: int = DEFAULT_PREC) -> AdaptiveReal:
    """h(alpha) = log(alpha)/k, since alpha is the only conjugate outside the unit disk."""
    return dominant_root_alpha(k, prec).log() / k


def _validated_roots(coeffs: Tuple[int, ...], wp: int):
    """All complex roots with inclusion radii.

    Uses Smith's theorem: the disks D(z_i, d*|p(z_i)| / |a0 prod_{j!=i}(z_i - z_j)|)
    cover the zeros, and a disk disjoint from the others holds exactly one.
    Rounding in the evaluation is absorbed by generous a-priori bounds.
    """
    d = len(coeffs) - 1
    with mpmath.workprec(wp):
        try:
            zs = mpmath.polyroots(coeffs, maxsteps=50 + 10 * d, extraprec=wp)
        except mpmath.libmp.NoConvergence as exc:
            raise PrecisionError(f"root finder did not converge at {wp} bits") from exc
        u = mpmath.ldexp(1, -wp)
        radii = []
        for i, z in enumerate(zs):
            pz = mpmath.polyval(coeffs, z)
            az = abs(z)
            scale = mpmath.fsum(abs(c) * az ** (d - j) for j, c in enumerate(coeffs))
            perr = 8 * d * u * scale
            den = abs(coeffs[0]) * mpmath.fprod(z - w for j, w in enumerate(zs) if j != i)
            den = abs(den) * (1 - 8 * d * u)
            if den <= 0:
                raise PrecisionError("coincident root approximations")
            radii.append(d * (abs(pz) + perr) / den * (1 + mpmath.ldexp(1, -20)))
        for i in range(d):
            for j in range(i + 1, d):
                if abs(zs[i] - zs[j]) * (1 - 4 * u) <= radii[i] + radii[j]:
                    raise PrecisionError("inclusion disks overlap")
        mods = [abs(z) for z in zs]
    return mods, radii


def log_height(coeffs: Sequence[int], prec: int = DEFAULT_PREC) -> AdaptiveReal:
    """Absolute logarithmic height from a (squarefree) minimal polynomial."""
    poly = _normalize(coeffs)
    d = len(poly) - 1
    if d > MAX_HEIGHT_DEGREE:
        raise DomainError(f"degree {d} exceeds cap {MAX_HEIGHT_DEGREE}")
    total = AdaptiveReal.exact(poly[0], prec).log()
    if d == 1:
        root = abs(Fraction(-poly[1], poly[0]))
        total = total + AdaptiveReal.exact(max(root, Fraction(1)), prec).log()
        return total / d
    wp = prec + 64
    mods, radii = _validated_roots(poly, wp)
    slop = mpmath.ldexp(1, -(wp - 8))
    for mod, r in zip(mods, radii):
        with mpmath.workprec(wp):
            lo = mod * (1 - slop) - r
            hi = mod * (1 + slop) + r
        lo = max(lo, mpmath.mpf(1))
        hi = max(hi, mpmath.mpf(1))
        total = total + AdaptiveReal.from_mpf(lo, hi, prec).log()
    return total / d
