from fractions import Fraction
from itertools import islice

import pytest
from hypothesis import given, strategies as st

from kfib_narayana.algebraic import dominant_root_alpha, f_k_alpha, narayana_constants
from kfib_narayana.errors import DomainError
from kfib_narayana.sequences import KFibParams, k_fib, kfib_iter, narayana, narayana_iter, seq_iter
from oracles import power_range


def naive_kfib(k, n):
    # list-based oracle: window of k-1 zeros, then 1 at index 1
    vals = [0] * (k - 1) + [1]  # indices -(k-2) .. 1
    while len(vals) < n + k - 1:
        vals.append(sum(vals[-k:]))
    return vals[n + k - 2]


def naive_narayana(m):
    vals = [0, 1, 1]
    while len(vals) <= m:
        vals.append(vals[-1] + vals[-3])
    return vals[m]


@pytest.mark.parametrize("k,n,value", [(2, 4, 3), (3, 6, 13), (5, 7, 31), (4, 4, 4), (7, 0, 0)])
def test_k_fib_examples(k, n, value):
    assert k_fib(k, n) == value


@pytest.mark.parametrize("m,value", [(4, 2), (9, 13), (0, 0)])
def test_narayana_examples(m, value):
    assert narayana(m) == value


def test_stream_prefixes():
    assert [v for _, v in islice(seq_iter("narayana", 0), 10)] == [0, 1, 1, 1, 2, 3, 4, 6, 9, 13]
    assert [v for _, v in islice(seq_iter("kfib", 1, k=2), 6)] == [1, 1, 2, 3, 5, 8]
    assert [v for _, v in islice(seq_iter("kfib", 1, k=3), 6)] == [1, 1, 2, 4, 7, 13]


def test_negative_window():
    assert [v for _, v in islice(kfib_iter(5, -3), 6)] == [0, 0, 0, 0, 1, 1]
    assert k_fib(5, -3) == 0
    with pytest.raises(DomainError):
        k_fib(5, -4)
    with pytest.raises(DomainError):
        KFibParams(1, 3)
    with pytest.raises(DomainError):
        narayana(-1)
    with pytest.raises(DomainError):
        seq_iter("lucas")


@given(st.integers(2, 12), st.integers(-10, 120))
def test_matches_naive_oracle(k, n):
    n = max(n, -(k - 2))
    assert k_fib(k, n) == naive_kfib(k, n)


@given(st.integers(0, 400))
def test_narayana_matches_oracle(m):
    assert narayana(m) == naive_narayana(m)


@given(st.integers(2, 30), st.integers(0, 60))
def test_iter_agrees_with_pointwise(k, start):
    it = list(islice(kfib_iter(k, start), 5))
    assert it == [(start + i, k_fib(k, start + i)) for i in range(5)]


def test_monotonicity_scan():
    prev = None
    for m, v in islice(narayana_iter(3), 10_000 - 2):
        if prev is not None:
            assert v > prev
        prev = v
    for k in (2, 3, 7, 50):
        prev = None
        for n, v in islice(kfib_iter(k, 2), 2_000):
            if prev is not None:
                assert v > prev
            prev = v


def test_power_of_two_prefix():
    for k in range(2, 65):
        for n in range(2, k + 2):
            assert k_fib(k, n) == 2 ** (n - 2)
        assert k_fib(k, k + 2) == 2 ** k - 1


def test_growth_bounds_kfib():
    # alpha^(n-2) <= F_n <= alpha^(n-1), decided with exact rational endpoints
    for k in (2, 3, 4, 5, 8, 13, 20):
        a = dominant_root_alpha(k, 512)
        for n in range(1, 201):
            F = k_fib(k, n)
            assert power_range(a, n - 2)[1] <= F <= power_range(a, n - 1)[0], (k, n)


def test_growth_bounds_narayana_upper():
    lam = narayana_constants(512).lam
    for m in range(1, 301):
        assert narayana(m) <= power_range(lam, m - 1)[0]


def test_narayana_printed_lower_bound_is_false():
    # lambda^(m-2) <= N_m fails from m = 3 on; N_3 = 1 < lambda
    lam = narayana_constants(512).lam
    holds = [m for m in range(1, 301) if power_range(lam, m - 2)[1] <= narayana(m)]
    fails = [m for m in range(1, 301) if power_range(lam, m - 2)[0] > narayana(m)]
    assert holds == [1, 2] and fails == list(range(3, 301))


def test_narayana_shifted_lower_bound():
    lam = narayana_constants(512).lam
    for m in range(1, 301):
        assert power_range(lam, m - 3)[1] <= narayana(m)


def test_dominant_term_gap():
    # |F_n - f_k(alpha) alpha^(n-1)| < 1/2
    for k in (2, 3, 4, 6, 10, 15, 20):
        a = dominant_root_alpha(k, 768)
        fk = f_k_alpha(k, a)
        for n in range(1, 151):
            gap = abs(fk * a ** (n - 1) - k_fib(k, n))
            assert gap.upper_fraction() < Fraction(1, 2), (k, n)
