"""Exact brute-force search for F_n^(k) = N_m and for powers of two among N_m."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from itertools import islice
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .errors import DomainError, VerificationError
from .sequences import kfib_iter, narayana_iter

__all__ = [
    "Solution",
    "Theorem2Report",
    "TRIVIAL_PAIRS",
    "is_trivial",
    "intersect_bruteforce",
    "intersect_quadratic",
    "narayana_powers_of_two",
    "expected_nontrivial",
    "CLAIMS",
    "verify_theorem2",
]

# (n, m) coincidences from the shared start 0, 1, 1, 2; valid for every k >= 2
TRIVIAL_PAIRS = frozenset({(0, 0), (1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 4)})


def is_trivial(n: int, m: int) -> bool:
    return (n, m) in TRIVIAL_PAIRS


@dataclass(frozen=True, order=True)
class Solution:
    k: int
    n: int
    m: int
    value: int = field(compare=False)
    trivial: bool = field(compare=False)

    def key(self) -> Tuple[int, int, int]:
        return (self.k, self.n, self.m)

    def to_json(self) -> dict:
        return {"k": self.k, "n": self.n, "m": self.m, "value": str(self.value), "trivial": self.trivial}


def _groups(stream: Iterable[Tuple[int, int]]):
    """Collapse a nondecreasing (index, value) stream into (value, [indices])."""
    cur_val, idx = None, []
    for i, v in stream:
        if v != cur_val:
            if idx:
                yield cur_val, idx
            cur_val, idx = v, [i]
        else:
            idx.append(i)
    if idx:
        yield cur_val, idx


def _search_k(k: int, n_min: int, n_max: int, m_min: int, m_max: int) -> List[Solution]:
    fib = _groups(islice(kfib_iter(k, n_min), max(0, n_max - n_min + 1)))
    nar = _groups(islice(narayana_iter(m_min), max(0, m_max - m_min + 1)))
    out = []
    f = next(fib, None)
    g = next(nar, None)
    while f is not None and g is not None:
        if f[0] < g[0]:
            f = next(fib, None)
        elif f[0] > g[0]:
            g = next(nar, None)
        else:
            for n in f[1]:
                for m in g[1]:
                    out.append(Solution(k, n, m, f[0], is_trivial(n, m)))
            f = next(fib, None)
            g = next(nar, None)
    return out


def intersect_bruteforce(k_lo: int, k_hi: int, n_max: int, m_max: int, n_min: int = 0,
                         m_min: int = 0, workers: int = 1) -> List[Solution]:
    """All (k, n, m) in the box with F_n^(k) = N_m, by merging the two monotone streams."""
    if not 2 <= k_lo <= k_hi:
        raise DomainError("need 2 <= k_lo <= k_hi")
    if n_max < 1 or m_max < 1 or n_min < 0 or m_min < 0:
        raise DomainError("bad index caps")
    job = partial(_search_k, n_min=n_min, n_max=n_max, m_min=m_min, m_max=m_max)
    ks = range(k_lo, k_hi + 1)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(job, ks, chunksize=8))
    else:
        chunks = [job(k) for k in ks]
    return sorted(s for chunk in chunks for s in chunk)


def intersect_quadratic(k_lo: int, k_hi: int, n_max: int, m_max: int) -> List[Solution]:
    """All-pairs reference scan; only for small caps."""
    nar = [v for _, v in islice(narayana_iter(0), m_max + 1)]
    out = []
    for k in range(k_lo, k_hi + 1):
        fib = [v for _, v in islice(kfib_iter(k, 0), n_max + 1)]
        for n, fv in enumerate(fib):
            for m, nv in enumerate(nar):
                if fv == nv:
                    out.append(Solution(k, n, m, fv, is_trivial(n, m)))
    return sorted(out)


def narayana_powers_of_two(m_max: int, include_ones: bool = False) -> List[Tuple[int, int]]:
    """(m, l) with N_m = 2^l for m <= m_max; the N = 1 entries only with ``include_ones``."""
    if m_max < 1:
        raise DomainError("m_max must be >= 1")
    out = []
    for m, v in islice(narayana_iter(1), m_max):
        if v & (v - 1) == 0:
            l = v.bit_length() - 1
            if l > 0 or include_ones:
                out.append((m, l))
    return out


# Sporadic nontrivial solutions.  "published" is the set as originally stated;
# "corrected" adds F_7^(2) = N_9 = 13, which the exact search finds.
CLAIMS = {
    "published": ((2, 4, 5), (3, 6, 9)),
    "corrected": ((2, 4, 5), (2, 7, 9), (3, 6, 9)),
}


def expected_nontrivial(k_lo: int, k_hi: int, n_min: int, n_max: int, m_min: int, m_max: int,
                        claim: str = "corrected") -> List[Tuple[int, int, int]]:
    """The claimed nontrivial solution set (plus the family (k, 4, 6), k >= 3), clipped to a box."""
    if claim not in CLAIMS:
        raise DomainError(f"unknown claim {claim!r}")
    claimed = list(CLAIMS[claim]) + [(k, 4, 6) for k in range(3, k_hi + 1)]
    return sorted(t for t in claimed
                  if k_lo <= t[0] <= k_hi and n_min <= t[1] <= n_max and m_min <= t[2] <= m_max)


@dataclass
class Theorem2Report:
    passed: bool
    claim: str
    box: dict
    found: List[Tuple[int, int, int]]
    expected: List[Tuple[int, int, int]]
    extras: List[Tuple[int, int, int]]
    missing: List[Tuple[int, int, int]]

    def raise_for_failure(self):
        if not self.passed:
            raise VerificationError(
                f"solution set mismatch: extras={self.extras} missing={self.missing}", record="search")

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "claim": self.claim,
            "box": self.box,
            "found": [list(t) for t in self.found],
            "extras": [list(t) for t in self.extras],
            "missing": [list(t) for t in self.missing],
        }


def verify_theorem2(k_hi: int, n_max: int, m_max: int, k_lo: int = 2, n_min: int = 0,
                    m_min: int = 0, solver: Optional[Callable[..., Sequence[Solution]]] = None,
                    workers: int = 1, claim: str = "corrected") -> Theorem2Report:
    """Compare the nontrivial solutions in a box against a claimed set."""
    solver = solver or intersect_bruteforce
    sols = solver(k_lo, k_hi, n_max, m_max, n_min=n_min, m_min=m_min, workers=workers)
    found = sorted({s.key() for s in sols if not s.trivial})
    expected = expected_nontrivial(k_lo, k_hi, n_min, n_max, m_min, m_max, claim)
    extras = sorted(set(found) - set(expected))
    missing = sorted(set(expected) - set(found))
    box = {"k": [k_lo, k_hi], "n": [n_min, n_max], "m": [m_min, m_max]}
    return Theorem2Report(not extras and not missing, claim, box, found, expected, extras, missing)
