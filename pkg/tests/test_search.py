import pytest
from hypothesis import given, settings, strategies as st

from kfib_narayana.errors import DomainError, VerificationError
from kfib_narayana.search import (
    CLAIMS,
    TRIVIAL_PAIRS,
    Solution,
    expected_nontrivial,
    intersect_bruteforce,
    intersect_quadratic,
    is_trivial,
    narayana_powers_of_two,
    verify_theorem2,
)
from kfib_narayana.sequences import k_fib, narayana


def test_known_solutions_are_found():
    keys = {s.key() for s in intersect_bruteforce(2, 5, 30, 40) if not s.trivial}
    assert {(2, 4, 5), (2, 7, 9), (3, 6, 9), (3, 4, 6), (4, 4, 6), (5, 4, 6)} <= keys
    for k, n, m in keys:
        assert k_fib(k, n) == narayana(m)


def test_trivial_pairs_hold_for_every_k():
    for k in range(2, 30):
        for n, m in TRIVIAL_PAIRS:
            assert k_fib(k, n) == narayana(m)
    assert is_trivial(3, 4) and not is_trivial(4, 5)


def test_solution_json():
    s = intersect_bruteforce(3, 3, 6, 9, n_min=6, m_min=9)[0]
    assert s == Solution(3, 6, 9, 13, False)
    assert s.to_json() == {"k": 3, "n": 6, "m": 9, "value": "13", "trivial": False}


@settings(max_examples=25, deadline=None)
@given(k_lo=st.integers(2, 8), width=st.integers(0, 4), n_max=st.integers(1, 40), m_max=st.integers(1, 50))
def test_merge_matches_quadratic_oracle(k_lo, width, n_max, m_max):
    k_hi = k_lo + width
    assert intersect_bruteforce(k_lo, k_hi, n_max, m_max) == intersect_quadratic(k_lo, k_hi, n_max, m_max)


def test_window_offsets_match_oracle():
    full = intersect_quadratic(2, 6, 60, 80)
    part = intersect_bruteforce(2, 6, 60, 80, n_min=4, m_min=5)
    assert part == [s for s in full if s.n >= 4 and s.m >= 5]


def test_workers_are_deterministic():
    a = intersect_bruteforce(2, 40, 80, 120, workers=1)
    b = intersect_bruteforce(2, 40, 80, 120, workers=2)
    assert a == b
    assert [s.to_json() for s in a] == [s.to_json() for s in b]


def test_bad_boxes():
    with pytest.raises(DomainError):
        intersect_bruteforce(1, 3, 10, 10)
    with pytest.raises(DomainError):
        intersect_bruteforce(4, 3, 10, 10)
    with pytest.raises(DomainError):
        intersect_bruteforce(2, 3, 0, 10)
    with pytest.raises(DomainError):
        narayana_powers_of_two(0)
    with pytest.raises(DomainError):
        expected_nontrivial(2, 3, 0, 10, 0, 10, claim="other")


def test_powers_of_two():
    assert narayana_powers_of_two(10_000) == [(4, 1), (6, 2)]
    assert narayana_powers_of_two(6, include_ones=True) == [(1, 0), (2, 0), (3, 0), (4, 1), (6, 2)]


def test_published_claim_misses_2_7_9():
    rep = verify_theorem2(198, 200, 277, n_min=4, m_min=5, claim="published")
    assert not rep.passed
    assert rep.extras == [(2, 7, 9)] and rep.missing == []
    with pytest.raises(VerificationError):
        rep.raise_for_failure()


def test_corrected_claim_holds():
    rep = verify_theorem2(198, 200, 277, n_min=4, m_min=5)
    assert rep.passed and rep.claim == "corrected"
    assert len(rep.found) == 2 + 1 + (198 - 2)
    rep.raise_for_failure()
    assert rep.to_json()["box"] == {"k": [2, 198], "n": [4, 200], "m": [5, 277]}


def test_claim_sets():
    assert set(CLAIMS["corrected"]) - set(CLAIMS["published"]) == {(2, 7, 9)}
    fam = expected_nontrivial(2, 10, 0, 100, 0, 100, claim="published")
    assert fam == sorted([(2, 4, 5), (3, 6, 9)] + [(k, 4, 6) for k in range(3, 11)])


def _injecting_solver(extra):
    def solver(*args, **kwargs):
        return list(intersect_bruteforce(*args, **kwargs)) + [extra]
    return solver


def _dropping_solver(key):
    def solver(*args, **kwargs):
        return [s for s in intersect_bruteforce(*args, **kwargs) if s.key() != key]
    return solver


def test_adversarial_solvers_are_caught():
    rep = verify_theorem2(20, 60, 80, solver=_injecting_solver(Solution(11, 30, 40, 0, False)))
    assert not rep.passed and rep.extras == [(11, 30, 40)]
    rep = verify_theorem2(20, 60, 80, solver=_dropping_solver((3, 6, 9)))
    assert not rep.passed and rep.missing == [(3, 6, 9)]
    # a trivial pair injected as trivial is ignored by design
    rep = verify_theorem2(20, 60, 80, solver=_injecting_solver(Solution(5, 3, 4, 2, True)))
    assert rep.passed
