"""Certified real enclosures on top of mpmath's low-level interval kernels.

An :class:`AdaptiveReal` is a closed interval ``[lower, upper]`` of binary
floating-point endpoints that is guaranteed to contain a true value.  Every
operation rounds outward, so enclosures only ever grow under arithmetic and
shrink under refinement (recomputing at more bits).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Union

import mpmath
from mpmath import libmp
from mpmath.libmp import libmpi

from .errors import DomainError, PrecisionError

__all__ = ["AdaptiveReal", "RealSource", "coerce", "refine", "DEFAULT_PREC"]

DEFAULT_PREC = 256

Number = Union[int, Fraction, "AdaptiveReal"]


def _raw_exact(x):
    # mpmath.mpf(...) would round to the ambient context precision
    if isinstance(x, mpmath.mpf):
        return x._mpf_
    if isinstance(x, int):
        return libmp.from_int(x)
    if isinstance(x, float):
        return libmp.from_float(x)
    raise TypeError(f"cannot wrap {type(x).__name__} exactly")


def _raw_from_fraction(x: Fraction, prec: int, rnd: str):
    return libmp.from_rational(x.numerator, x.denominator, prec, rnd)


def _raw_to_fraction(raw) -> Fraction:
    p, q = libmp.to_rational(raw)
    return Fraction(int(p), int(q))


class AdaptiveReal:
    """Interval enclosure ``[lower, upper]`` with a working precision in bits."""

    __slots__ = ("_lo", "_hi", "prec")

    def __init__(self, lo, hi, prec: int):
        if libmp.mpf_gt(lo, hi):
            raise ValueError("empty enclosure")
        self._lo = lo
        self._hi = hi
        self.prec = int(prec)

    # construction ------------------------------------------------------

    @classmethod
    def exact(cls, x: Union[int, Fraction, str], prec: int = DEFAULT_PREC) -> "AdaptiveReal":
        """Tightest enclosure of an integer or rational at ``prec`` bits."""
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, int):
            raw = libmp.from_int(x)
            return cls(raw, raw, prec)
        x = Fraction(x)
        if x.denominator == 1:
            return cls.exact(x.numerator, prec)
        return cls(_raw_from_fraction(x, prec, libmp.round_floor),
                   _raw_from_fraction(x, prec, libmp.round_ceiling), prec)

    @classmethod
    def from_bounds(cls, lo: Union[int, Fraction], hi: Union[int, Fraction],
                    prec: int = DEFAULT_PREC) -> "AdaptiveReal":
        return cls(cls.exact(lo, prec)._lo, cls.exact(hi, prec)._hi, prec)

    @classmethod
    def from_mpf(cls, lo, hi=None, prec: int = DEFAULT_PREC) -> "AdaptiveReal":
        """Wrap mpmath ``mpf`` endpoints (taken as exact binary numbers)."""
        hi = lo if hi is None else hi
        return cls(_raw_exact(lo), _raw_exact(hi), prec)

    # inspection --------------------------------------------------------

    @property
    def lower(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(self._lo)

    @property
    def upper(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(self._hi)

    @property
    def midpoint(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(libmp.mpf_shift(libmp.mpf_add(self._lo, self._hi), -1))

    @property
    def radius(self) -> mpmath.mpf:
        width = libmp.mpf_sub(self._hi, self._lo, 64, libmp.round_ceiling)
        return mpmath.mp.make_mpf(libmp.mpf_shift(width, -1))

    def lower_fraction(self) -> Fraction:
        return _raw_to_fraction(self._lo)

    def upper_fraction(self) -> Fraction:
        return _raw_to_fraction(self._hi)

    def contains(self, x: Union[int, float, Fraction, str]) -> bool:
        if isinstance(x, float):
            x = Fraction(x)
        x = Fraction(x)
        return self.lower_fraction() <= x <= self.upper_fraction()

    def encloses(self, other: "AdaptiveReal") -> bool:
        return (libmp.mpf_le(self._lo, other._lo)
                and libmp.mpf_ge(self._hi, other._hi))

    def is_positive(self) -> bool:
        return libmp.mpf_gt(self._lo, libmp.fzero)

    def is_negative(self) -> bool:
        return libmp.mpf_lt(self._hi, libmp.fzero)

    def excludes_zero(self) -> bool:
        return self.is_positive() or self.is_negative()

    def sign(self) -> int:
        """Certified sign; raises :class:`PrecisionError` if 0 is enclosed."""
        if self.is_positive():
            return 1
        if self.is_negative():
            return -1
        raise PrecisionError(f"sign undecidable for {self!r}")

    def floor_of_upper(self) -> int:
        """Largest integer not exceeding the upper endpoint."""
        return int(libmp.to_int(libmp.mpf_floor(self._hi)))

    def ceil_of_lower(self) -> int:
        return int(libmp.to_int(libmp.mpf_ceil(self._lo)))

    def __float__(self) -> float:
        return float(self.midpoint)

    def __repr__(self) -> str:
        return (f"AdaptiveReal({mpmath.nstr(self.midpoint, 20)} "
                f"± {mpmath.nstr(self.radius, 3)}, prec={self.prec})")

    def to_json(self) -> dict:
        digits = max(20, int(self.prec * 0.30103) + 2)
        return {
            "midpoint": libmp.to_str(libmp.mpf_shift(libmp.mpf_add(self._lo, self._hi), -1), digits),
            "radius": libmp.to_str(libmp.mpf_shift(
                libmp.mpf_sub(self._hi, self._lo, 53, libmp.round_ceiling), -1), 17),
            "precision": self.prec,
        }

    # arithmetic --------------------------------------------------------

    def _coerce(self, other: Number) -> "AdaptiveReal":
        if isinstance(other, AdaptiveReal):
            return other
        if isinstance(other, (int, Fraction)):
            return AdaptiveReal.exact(other, self.prec)
        return NotImplemented

    def _wrap(self, pair, other: "AdaptiveReal | None" = None) -> "AdaptiveReal":
        prec = self.prec if other is None else max(self.prec, other.prec)
        lo, hi = pair
        if lo == libmp.fnan or hi == libmp.fnan:
            raise PrecisionError("interval operation produced NaN")
        return AdaptiveReal(lo, hi, prec)

    def _pair(self):
        return (self._lo, self._hi)

    def _wp(self, other: "AdaptiveReal | None" = None) -> int:
        return self.prec if other is None else max(self.prec, other.prec)

    def __add__(self, other: Number) -> "AdaptiveReal":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(libmpi.mpi_add(self._pair(), o._pair(), self._wp(o)), o)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "AdaptiveReal":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(libmpi.mpi_sub(self._pair(), o._pair(), self._wp(o)), o)

    def __rsub__(self, other: Number) -> "AdaptiveReal":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other: Number) -> "AdaptiveReal":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._wrap(libmpi.mpi_mul(self._pair(), o._pair(), self._wp(o)), o)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "AdaptiveReal":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.excludes_zero():
            raise PrecisionError(f"division by enclosure containing 0: {o!r}")
        return self._wrap(libmpi.mpi_div(self._pair(), o._pair(), self._wp(o)), o)

    def __rtruediv__(self, other: Number) -> "AdaptiveReal":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self) -> "AdaptiveReal":
        return AdaptiveReal(libmp.mpf_neg(self._hi), libmp.mpf_neg(self._lo), self.prec)

    def __abs__(self) -> "AdaptiveReal":
        return self._wrap(libmpi.mpi_abs(self._pair()))

    def __pow__(self, n: int) -> "AdaptiveReal":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return 1 / (self ** (-n))
        return self._wrap(libmpi.mpi_pow_int(self._pair(), n, self.prec))

    def log(self) -> "AdaptiveReal":
        if not self.is_positive():
            raise PrecisionError(f"log of enclosure touching 0: {self!r}")
        return self._wrap(libmpi.mpi_log(self._pair(), self.prec))

    def exp(self) -> "AdaptiveReal":
        return self._wrap(libmpi.mpi_exp(self._pair(), self.prec))

    def sqrt(self) -> "AdaptiveReal":
        if libmp.mpf_lt(self._lo, libmp.fzero):
            raise DomainError(f"sqrt of enclosure with negative part: {self!r}")
        return self._wrap(libmpi.mpi_sqrt(self._pair(), self.prec))

    def hull(self, other: "AdaptiveReal") -> "AdaptiveReal":
        lo = self._lo if libmp.mpf_le(self._lo, other._lo) else other._lo
        hi = self._hi if libmp.mpf_ge(self._hi, other._hi) else other._hi
        return AdaptiveReal(lo, hi, max(self.prec, other.prec))

    def intersect(self, other: "AdaptiveReal") -> "AdaptiveReal":
        lo = self._lo if libmp.mpf_ge(self._lo, other._lo) else other._lo
        hi = self._hi if libmp.mpf_le(self._hi, other._hi) else other._hi
        return AdaptiveReal(lo, hi, max(self.prec, other.prec))

    def max_with(self, other: Number) -> "AdaptiveReal":
        """Enclosure of ``max(x, y)`` for x, y ranging over both enclosures."""
        o = self._coerce(other)
        lo = self._lo if libmp.mpf_ge(self._lo, o._lo) else o._lo
        hi = self._hi if libmp.mpf_ge(self._hi, o._hi) else o._hi
        return AdaptiveReal(lo, hi, max(self.prec, o.prec))

    # comparisons are certified: they raise when the answer is not decided

    def __lt__(self, other: Number) -> bool:
        return (self - other).sign() < 0

    def __gt__(self, other: Number) -> bool:
        return (self - other).sign() > 0


RealSource = Callable[[int], AdaptiveReal]


def coerce(x, prec: int) -> AdaptiveReal:
    """Turn a number, enclosure or refinable source into an enclosure."""
    if isinstance(x, AdaptiveReal):
        return x
    if callable(x):
        return x(prec)
    if isinstance(x, float):
        # binary floats are exact rationals
        return AdaptiveReal.exact(Fraction(x), prec)
    if isinstance(x, (int, Fraction, str)):
        return AdaptiveReal.exact(x, prec)
    raise TypeError(f"cannot interpret {x!r} as a real")


def refine(compute: Callable[[int], object], start: int = DEFAULT_PREC,
           max_prec: int = 16384):
    """Call ``compute(prec)`` doubling ``prec`` until it stops raising
    :class:`PrecisionError`.  Budget exhaustion re-raises the last error."""
    prec = start
    while True:
        try:
            return compute(prec)
        except PrecisionError:
            if prec * 2 > max_prec:
                raise
            prec *= 2
