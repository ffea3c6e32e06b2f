"""Independent oracles shared by the unit and acceptance suites."""

import math
from fractions import Fraction

import mpmath
import numpy as np

from kfib_narayana.adaptive import AdaptiveReal


def power_range(x, e):
    """Exact [min, max] of t^e over the enclosure of x, for an enclosure above 1."""
    lo, hi = x.lower_fraction(), x.upper_fraction()
    assert lo > 1
    return (lo ** e, hi ** e) if e >= 0 else (hi ** e, lo ** e)


def brute_violations(tau, mu, A, B, M, u_from):
    """(u, v) with u_from < u <= M and 0 < |u tau - v + mu| < A B^-u.

    float64 screens every u; anything within reach of the bound is rechecked
    with mpmath at a precision that resolves B^-u.
    """
    t, m_, a, b = (float(x) for x in (tau(64).midpoint, mu(64).midpoint, A, B))
    u = np.arange(u_from + 1, M + 1, dtype=np.float64)
    x = u * t + m_
    d = np.abs(x - np.rint(x))
    thresh = a * np.power(b, -u)
    suspects = np.nonzero(d <= thresh + 1e-9)[0]
    out = []
    for i in suspects:
        uu = int(u[i])
        prec = int(uu * math.log2(b)) + 128
        tv, mv = tau(prec), mu(prec)
        with mpmath.workprec(prec):
            val = uu * tv.midpoint + mv.midpoint
            v = int(mpmath.nint(val))
            dist = abs(val - v)
            if 0 < dist < mpmath.mpf(A) * mpmath.mpf(B) ** (-uu):
                out.append((uu, v))
    return out


def sqrt_source(d):
    return lambda prec: AdaptiveReal.exact(d, prec).sqrt()


def log_ratio_source(a, b):
    return lambda prec: AdaptiveReal.exact(a, prec).log() / AdaptiveReal.exact(b, prec).log()


def const_source(x):
    return lambda prec: AdaptiveReal.exact(x, prec)


def random_instance(rng):
    kind = rng.choice(["sqrt", "log"])
    if kind == "sqrt":
        d = rng.choice([n for n in range(2, 200) if math.isqrt(n) ** 2 != n])
        tau = sqrt_source(d)
    else:
        a, b = rng.sample([2, 3, 5, 7, 11, 13], 2)
        tau = log_ratio_source(a, b)
    mu = const_source(Fraction(rng.randint(1, 999), rng.randint(1000, 5000)))
    A = Fraction(rng.randint(1, 40), 4)
    B = Fraction(rng.randint(11, 40), 10)
    M = rng.randint(10, 10**4)
    return tau, mu, A, B, M
