"""Exact generation of k-generalized Fibonacci and Narayana's cows numbers."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import islice
from typing import Iterator, Optional, Tuple

from .errors import DomainError

__all__ = ["KFibParams", "k_fib", "narayana", "seq_iter", "kfib_iter", "narayana_iter"]


@dataclass(frozen=True)
class KFibParams:
    k: int
    n: int

    def __post_init__(self):
        if self.k < 2:
            raise DomainError(f"order k must be >= 2, got {self.k}")
        if self.n < -(self.k - 2):
            raise DomainError(f"index n={self.n} below the initial window -(k-2)={-(self.k - 2)}")


def kfib_iter(k: int, start: int = 0) -> Iterator[Tuple[int, int]]:
    """Yield ``(n, F_n^(k))`` for n = start, start+1, ...

    Keeps only the last k terms and their running sum.
    """
    KFibParams(k, start)
    window = deque([0] * (k - 1) + [1], maxlen=k)  # F_{2-k}, ..., F_1
    total = 1
    n = 1
    if start <= 1:
        for i in range(start, 1):
            yield i, 0
        yield 1, 1
        start = 2
    while True:
        n += 1
        value = total
        total += value - window[0]
        window.append(value)
        if n >= start:
            yield n, value


def narayana_iter(start: int = 0) -> Iterator[Tuple[int, int]]:
    """Yield ``(m, N_m)`` for m = start, start+1, ..."""
    if start < 0:
        raise DomainError(f"Narayana index must be >= 0, got {start}")
    a, b, c = 0, 1, 1  # N_m, N_{m+1}, N_{m+2}
    m = 0
    while True:
        if m >= start:
            yield m, a
        a, b, c = b, c, c + a
        m += 1


def seq_iter(kind: str, start: int = 0, k: Optional[int] = None) -> Iterator[Tuple[int, int]]:
    """Stream of ``(index, value)``; ``kind`` is ``"kfib"`` (needs ``k``) or ``"narayana"``."""
    if kind == "kfib":
        if k is None:
            raise DomainError("kfib stream needs k")
        return kfib_iter(k, start)
    if kind == "narayana":
        return narayana_iter(start)
    raise DomainError(f"unknown sequence kind {kind!r}")


def k_fib(k: int, n: int) -> int:
    """Exact F_n^(k), defined for n >= -(k-2)."""
    KFibParams(k, n)
    if n <= 0:
        return 0
    return next(islice(kfib_iter(k, n), 1))[1]


def narayana(m: int) -> int:
    """Exact N_m with N_0 = 0, N_1 = N_2 = 1."""
    if m < 0:
        raise DomainError(f"Narayana index must be >= 0, got {m}")
    return next(narayana_iter(m))[1]
