"""End-to-end orchestration: bound chains, reductions, search, and the certificate.

Stages
------
small-k       2 <= k <= threshold: Matveev bound on n, one reduction per k, then
              caps on m, n and k.
large-k       k > threshold: absolute bounds, two reduction passes, and a final
              k cap that must fall below the threshold.
powers-of-two the branch n <= k + 1, where F_n^(k) = 2^(n-2): a Baker bound and
              one reduction cap m, and the exact scan covers the rest.
search        exhaustive enumeration inside the certified caps.

The certificate is canonical JSON.  Exact integers are decimal strings, reals
are (midpoint, radius, precision) triples.  The trailing sha256 digest covers
everything else.  ``verify_certificate`` recomputes every recorded inequality
before it checks the digest, so a tampered field is reported by name whenever
the tampering changes the mathematics.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
import platform
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import mpmath

from . import __version__
from .adaptive import AdaptiveReal
from .algebraic import dominant_root_alpha, narayana_constants
from .bounds import (
    LARGE_K_THRESHOLD,
    PUBLISHED,
    large_k_absolute_bounds,
    large_k_constants,
    matveev_constant,
    n_bound_for_k,
    sanchez_luca_resolve,
    small_k_absolute_bounds,
)
from .errors import DomainError, PrecisionError, ReductionFailed, VerificationError
from .reduction import (
    ReductionOutcome,
    ReductionProblem,
    baker_davenport,
    epsilon_for,
    large_k_problem,
    power_of_two_problem,
    small_k_problem,
)
from .search import CLAIMS, TRIVIAL_PAIRS, intersect_bruteforce, narayana_powers_of_two, verify_theorem2
from .sequences import k_fib

__all__ = [
    "PipelineConfig",
    "CERT_FORMAT",
    "CERT_VERSION",
    "run_small_k_stage",
    "run_large_k_stage",
    "run_power_of_two_stage",
    "run_search_stage",
    "run_pipeline",
    "emit_certificate",
    "certificate_bytes",
    "load_certificate",
    "verify_certificate",
]

log = logging.getLogger("kfib_narayana")

CERT_FORMAT = "kfib-narayana-certificate"
CERT_VERSION = 1
ZETA_SAMPLE_K = (2, 3, 4, 5, 10, 20, 50, 100, 221)


@dataclass
class PipelineConfig:
    small_k_min: int = 2
    small_k_max: int = LARGE_K_THRESHOLD
    start_prec: int = 256
    max_prec: int = 16384
    cf_terms: int = 4000
    workers: int = 1
    out: Optional[str] = None

    def __post_init__(self):
        if self.small_k_min != 2:
            raise DomainError("the small-k range must start at k = 2")
        if self.small_k_max < 3:
            raise DomainError("small_k_max must be at least 3")
        if not 64 <= self.start_prec <= self.max_prec:
            raise DomainError("need 64 <= start_prec <= max_prec")
        if self.cf_terms < 10 or self.workers < 1:
            raise DomainError("cf_terms >= 10 and workers >= 1 required")

    @property
    def threshold(self) -> int:
        """Large-k stage covers k > threshold."""
        return self.small_k_max

    @classmethod
    def from_json(cls, data: Union[str, dict]) -> "PipelineConfig":
        if isinstance(data, str):
            data = json.loads(data)
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise DomainError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "PipelineConfig":
        return cls.from_json(Path(path).read_text())

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("out")  # output location does not change the mathematics
        return d


def _ceil_int(x: float) -> int:
    return math.ceil(Fraction(x))


# ---------------------------------------------------------------------------
# small k


def _small_k_item(k: int, start_prec: int, max_prec: int, max_terms: int) -> dict:
    report = small_k_absolute_bounds(k)
    M = _ceil_int(report.n_bound)
    out = baker_davenport(small_k_problem(k, M), start_prec, max_prec, max_terms)
    # the inequality |Gamma| < A lambda^-m needs m >= 6; smaller m is left to the search
    m_bound = max(out.u_bound, 5)
    tau_lo = _small_tau(k, out.precision).lower_fraction()
    n_cap = math.floor((m_bound - 1) / tau_lo + 2)
    return {
        "k": k,
        "n_bound": report.n_bound,
        "m_bound_matveev": report.m_bound,
        "reduction": out.to_json(),
        "m_bound": m_bound,
        "n_cap": n_cap,
    }


def _small_tau(k: int, prec: int) -> AdaptiveReal:
    return dominant_root_alpha(k, prec).log() / narayana_constants(prec).lam.log()


def run_small_k_stage(cfg: PipelineConfig) -> dict:
    ks = list(range(cfg.small_k_min, cfg.small_k_max + 1))
    log.info("small-k stage: %d reductions", len(ks))
    args = (cfg.start_prec, cfg.max_prec, cfg.cf_terms)
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            items = list(pool.map(_small_k_item, ks, *[[a] * len(ks) for a in args], chunksize=4))
    else:
        items = []
        for k in ks:
            items.append(_small_k_item(k, *args))
            if k % 20 == 0:
                log.info("  k = %d done", k)
    items.sort(key=lambda r: r["k"])
    m_cap = max(r["m_bound"] for r in items)
    n_cap = max(r["n_cap"] for r in items)
    k_cap = min(cfg.small_k_max, n_cap - 2)
    max_M = max(int(r["reduction"]["M"]) for r in items)
    min_q = min(int(r["reduction"]["q"]) for r in items)
    passed = all(int(r["reduction"]["q"]) > 6 * int(r["reduction"]["M"]) for r in items)
    log.info("small-k stage: m <= %d, n <= %d, k <= %d", m_cap, n_cap, k_cap)
    return {
        "k_range": [cfg.small_k_min, cfg.small_k_max],
        "records": items,
        "m_cap": m_cap,
        "n_cap": n_cap,
        "k_cap": k_cap,
        "max_M": str(max_M),
        "min_q": str(min_q),
        "passed": passed,
        "cross_reference": {
            "published_max_M": PUBLISHED["small_max_M"],
            "published_m_cap": 277,
            "published_n_cap": 200,
            "published_k_cap": 198,
            "published_q73_upper": 1.22e43,
        },
    }


# ---------------------------------------------------------------------------
# large k


def _zeta_samples() -> Dict[str, float]:
    """max |F_n / 2^(n-2) - 1| over k + 2 <= n <= k + 40, next to 2 / 2^(k/2)."""
    out = {}
    for k in ZETA_SAMPLE_K:
        worst = max(abs(Fraction(k_fib(k, n), 2 ** (n - 2)) - 1) for n in range(k + 2, k + 41))
        out[str(k)] = {"max_abs_zeta": float(worst), "two_over_2_pow_half_k": 2.0 / 2.0 ** (k / 2)}
    return out


def _large_pass(M: int, label: str, cfg: PipelineConfig) -> Tuple[ReductionOutcome, int]:
    out = baker_davenport(large_k_problem(M, label), cfg.start_prec, cfg.max_prec, cfg.cf_terms)
    # w = k/2 < exponent bound
    k_cap = math.floor(2 * out.exponent_bound.upper_fraction())
    return out, k_cap


def run_large_k_stage(cfg: PipelineConfig) -> dict:
    log.info("large-k stage: absolute bounds")
    chain = large_k_absolute_bounds()
    M1 = _ceil_int(chain.m_bound)
    out1, k1 = _large_pass(M1, "large-k pass 1", cfg)
    log.info("large-k pass 1: q = %.4e, k <= %d", out1.q, k1)
    n2 = n_bound_for_k(k1)
    M2 = 2 * _ceil_int(n2)  # m < 1.9 n + 0.16 <= 2n
    out2, k2 = _large_pass(M2, "large-k pass 2", cfg)
    log.info("large-k pass 2: q = %.4e, k <= %d", out2.q, k2)
    margin = chain.constants["zeta_precondition_margin_at_221"]
    slope = chain.constants["zeta_precondition_slope_at_221"]
    passed = k2 < cfg.threshold and margin > 0 and slope < 0
    return {
        "threshold": cfg.threshold,
        "chain": chain.to_json(),
        "pass1": {"M": str(M1), "reduction": out1.to_json(), "k_cap": k1},
        "pass2": {"n_bound": n2, "M": str(M2), "reduction": out2.to_json(), "k_cap": k2},
        "final_k_cap": k2,
        "zeta_empirical": _zeta_samples(),
        "passed": passed,
        "cross_reference": {"published_pass1_k_cap": 596, "published_pass2_k_cap": 217,
                            "published_pass1_q": 4.29e87},
    }


# ---------------------------------------------------------------------------
# powers of two: N_m = 2^l


def _pow2_m_bound() -> Tuple[float, dict]:
    """Baker bound for N_m = 2^l, m >= 5.

    Lambda = 2^-l C_lambda lambda^(m+2) - 1 satisfies |Lambda| < 2^-l and, from
    N_m >= lambda^(m-3), l log 2 >= (m - 3) log lambda.  With B = m + 2 and the
    same A_i as the large-k form, x = m + 2 satisfies
    x < 5 + E (1 + log x) / log lambda, hence x / log x < T := 2E / log lambda + 5
    and x < 2 T log T.
    """
    consts = large_k_constants()
    E = matveev_constant(3, 3, [consts["large_A1"], consts["large_A2"], consts["large_A3"]])
    log_lam = narayana_constants(128).lam.log()
    T = 2 * E / log_lam + 5
    x = sanchez_luca_resolve(1, T)
    return x - 2, {"matveev_E": float(E.upper), "T": float(T.upper), "x_bound": x}


def run_power_of_two_stage(cfg: PipelineConfig) -> dict:
    m_bound, detail = _pow2_m_bound()
    M = _ceil_int(m_bound)
    out = baker_davenport(power_of_two_problem(M), cfg.start_prec, cfg.max_prec, cfg.cf_terms)
    l_cap = max(out.u_bound, 1)  # |Lambda| < 1/2 needs l >= 2
    inv_tau = 1 / _large_tau(out.precision)
    m_cap = max(math.floor(l_cap * inv_tau.upper_fraction() + 3), 6)
    found = narayana_powers_of_two(m_cap)
    passed = found == [(4, 1), (6, 2)]
    log.info("powers of two: l <= %d, m <= %d, found %s", l_cap, m_cap, found)
    return {
        "baker": detail,
        "M": str(M),
        "reduction": out.to_json(),
        "l_cap": l_cap,
        "m_cap": m_cap,
        "found": [list(t) for t in found],
        "passed": passed,
    }


def _large_tau(prec: int) -> AdaptiveReal:
    lam = narayana_constants(prec).lam
    return lam.log() / AdaptiveReal.exact(2, prec).log()


# ---------------------------------------------------------------------------
# search


def run_search_stage(cfg: PipelineConfig, small: dict, large: dict, pow2: dict) -> dict:
    """Exhaustive search over the caps left by the other stages.

    For n >= k + 2 every solution has k <= small k cap, n <= n cap, m <= m cap.
    For n <= k + 1 the value is 2^(n-2), so pow2 gives every (n, m) and the
    solutions are (k, l + 2, m) for all k >= l + 1.
    """
    k_cap, n_cap, m_cap = small["k_cap"], small["n_cap"], small["m_cap"]
    if large["final_k_cap"] >= cfg.threshold:
        raise VerificationError("large-k stage did not close", record="stages.large_k.final_k_cap")
    sols = intersect_bruteforce(2, k_cap, n_cap, m_cap, workers=cfg.workers)
    reports = {claim: verify_theorem2(k_cap, n_cap, m_cap, claim=claim, solver=lambda *a, **kw: sols)
               for claim in CLAIMS}
    branch = [{"n": l + 2, "m": m, "k_min": l + 1} for m, l in pow2["found"]]
    passed = reports["corrected"].passed
    log.info("search: %d solutions in box, corrected claim %s, published claim %s",
             len(sols), reports["corrected"].passed, reports["published"].passed)
    return {
        "box": {"k": [2, k_cap], "n": [0, n_cap], "m": [0, m_cap]},
        "solutions": [s.to_json() for s in sols],
        "nontrivial": [list(s.key()) for s in sols if not s.trivial],
        "power_of_two_branch": branch,
        "claims": {claim: rep.to_json() for claim, rep in reports.items()},
        "passed": passed,
    }


# ---------------------------------------------------------------------------
# certificate


def _environment(cfg: PipelineConfig) -> dict:
    return {
        "package": __version__,
        "python": platform.python_version(),
        "mpmath": mpmath.__version__,
        "precision_policy": {"start": cfg.start_prec, "max": cfg.max_prec, "growth": "doubling"},
        "rounding": "outward; upper bounds up, lower bounds down",
        "small_k_matveev_D": "2k",
        "linear_form_large_k": "2^-(n-2) C_lambda lambda^(m+2) - 1",
    }


def _trivial_list() -> List[dict]:
    return [{"n": n, "k": "any k >= 2", "m": m} for n, m in sorted(TRIVIAL_PAIRS)]


def run_pipeline(cfg: PipelineConfig, stages: Tuple[str, ...] = ("small_k", "large_k")) -> dict:
    """Run the stages and return the certificate body (without digest)."""
    records: Dict[str, dict] = {}
    for name in stages:
        if name == "small_k":
            records["small_k"] = run_small_k_stage(cfg)
        elif name == "large_k":
            records["large_k"] = run_large_k_stage(cfg)
        else:
            raise DomainError(f"unknown stage {name!r}")
    full = {"small_k", "large_k"} <= set(records)
    if full:
        records["powers_of_two"] = run_power_of_two_stage(cfg)
        records["search"] = run_search_stage(cfg, records["small_k"], records["large_k"],
                                             records["powers_of_two"])
    verdict = "pass" if full and all(r["passed"] for r in records.values()) else (
        "fail" if any(not r["passed"] for r in records.values()) else "partial")
    return {
        "format": CERT_FORMAT,
        "version": CERT_VERSION,
        "config": cfg.to_json(),
        "environment": _environment(cfg),
        "trivial_solutions": _trivial_list(),
        "stages": {name: records[name] for name in sorted(records)},
        "verdict": verdict,
    }


def _canonical(body: dict) -> bytes:
    return json.dumps(body, sort_keys=True, separators=(",", ":")).encode()


def certificate_bytes(body: dict) -> bytes:
    body = {k: v for k, v in body.items() if k != "digest"}
    digest = hashlib.sha256(_canonical(body)).hexdigest()
    doc = dict(body, digest={"algorithm": "sha256", "value": digest})
    return (json.dumps(doc, sort_keys=True, indent=1) + "\n").encode()


def emit_certificate(body: dict, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_bytes(certificate_bytes(body))
    log.info("certificate written to %s", path)
    return path


def load_certificate(path: Union[str, Path]) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise VerificationError(f"cannot read certificate: {exc}", record="<file>") from exc
    if not isinstance(doc, dict) or doc.get("format") != CERT_FORMAT:
        raise VerificationError("not a certificate", record="format")
    if doc.get("version") != CERT_VERSION:
        raise VerificationError(f"unsupported version {doc.get('version')!r}", record="version")
    return doc


class _Checker:
    """Recomputes recorded facts; the first mismatch raises with its record path."""

    def __init__(self, doc: dict):
        self.doc = doc
        try:
            self.cfg = PipelineConfig.from_json(doc["config"])
        except (KeyError, TypeError, DomainError) as exc:
            raise VerificationError(f"bad config: {exc}", record="config") from exc

    @staticmethod
    def need(cond: bool, record: str, what: str):
        if not cond:
            raise VerificationError(f"{record}: {what}", record=record)

    @staticmethod
    def get(d: dict, key: str, record: str):
        try:
            return d[key]
        except (KeyError, TypeError) as exc:
            raise VerificationError(f"{record}: missing field {key!r}", record=record) from exc

    def reduction(self, rec: dict, prob: ReductionProblem, path: str) -> int:
        """Recheck eps > 0 and the exponent bound at the recorded q; return u_bound."""
        try:
            q = int(rec["q"])
            p = int(rec["p"])
            prec = int(rec["precision"])
            u_bound = int(rec["u_bound"])
            M = int(rec["M"])
        except (KeyError, TypeError, ValueError) as exc:
            raise VerificationError(f"{path}: malformed reduction record", record=path) from exc
        self.need(M == prob.M, f"{path}.M", f"recorded M {M} != expected {prob.M}")
        self.need(q > 6 * prob.M, f"{path}.q", "q <= 6M")
        self.need(prec <= self.cfg.max_prec, f"{path}.precision", "precision over budget")
        tau = prob.tau(prec) if callable(prob.tau) else prob.tau
        err = abs(tau * q - p).upper_fraction()
        self.need(err < Fraction(1, q), f"{path}.q", "p/q is not a close approximation of tau")
        eps, bound = epsilon_for(prob, q, prec)
        self.need(bound is not None, f"{path}.q", "epsilon is not certified positive at this q")
        self.need(bound.floor_of_upper() == u_bound, f"{path}.u_bound",
                  f"recomputed bound {bound.floor_of_upper()} != recorded {u_bound}")
        return u_bound

    def small_k(self, st: dict):
        base = "stages.small_k"
        recs = self.get(st, "records", base)
        ks = [r.get("k") for r in recs]
        self.need(ks == list(range(2, self.cfg.small_k_max + 1)), f"{base}.records", "k range mismatch")
        m_cap = n_cap = 0
        for r in recs:
            k = r["k"]
            path = f"{base}.records[k={k}]"
            n_bound = small_k_absolute_bounds(k).n_bound
            self.need(self.get(r, "n_bound", path) == n_bound, f"{path}.n_bound", "n bound mismatch")
            red = self.get(r, "reduction", path)
            u = self.reduction(red, small_k_problem(k, _ceil_int(n_bound)), f"{path}.reduction")
            m_bound = max(u, 5)
            self.need(r.get("m_bound") == m_bound, f"{path}.m_bound", "m bound mismatch")
            tau_lo = _small_tau(k, int(red["precision"])).lower_fraction()
            n_k = math.floor((m_bound - 1) / tau_lo + 2)
            self.need(r.get("n_cap") == n_k, f"{path}.n_cap", "n cap mismatch")
            m_cap, n_cap = max(m_cap, m_bound), max(n_cap, n_k)
        self.need(st.get("m_cap") == m_cap, f"{base}.m_cap", "aggregate m cap mismatch")
        self.need(st.get("n_cap") == n_cap, f"{base}.n_cap", "aggregate n cap mismatch")
        k_cap = min(self.cfg.small_k_max, n_cap - 2)
        self.need(st.get("k_cap") == k_cap, f"{base}.k_cap", "k cap mismatch")
        ok = all(int(r["reduction"]["q"]) > 6 * int(r["reduction"]["M"]) for r in recs)
        self.need(st.get("passed") is ok, f"{base}.passed", "stage verdict mismatch")

    def large_k(self, st: dict):
        base = "stages.large_k"
        chain = large_k_absolute_bounds()
        self.need(st.get("chain") == chain.to_json(), f"{base}.chain", "bound chain mismatch")
        p1, p2 = self.get(st, "pass1", base), self.get(st, "pass2", base)
        M1 = _ceil_int(chain.m_bound)
        self.reduction(self.get(p1, "reduction", f"{base}.pass1"), large_k_problem(M1),
                            f"{base}.pass1.reduction")
        k1 = self._k_cap_from(p1["reduction"], f"{base}.pass1")
        self.need(p1.get("k_cap") == k1, f"{base}.pass1.k_cap", "k cap mismatch")
        n2 = n_bound_for_k(k1)
        self.need(p2.get("n_bound") == n2, f"{base}.pass2.n_bound", "n bound mismatch")
        M2 = 2 * _ceil_int(n2)
        self.reduction(self.get(p2, "reduction", f"{base}.pass2"), large_k_problem(M2),
                       f"{base}.pass2.reduction")
        k2 = self._k_cap_from(p2["reduction"], f"{base}.pass2")
        self.need(p2.get("k_cap") == k2 and st.get("final_k_cap") == k2, f"{base}.pass2.k_cap",
                  "k cap mismatch")
        self.need(k2 < self.cfg.threshold, f"{base}.final_k_cap", "final k cap not below threshold")
        c = chain.constants
        ok = k2 < self.cfg.threshold and c["zeta_precondition_margin_at_221"] > 0 \
            and c["zeta_precondition_slope_at_221"] < 0
        self.need(st.get("passed") is ok, f"{base}.passed", "stage verdict mismatch")

    @staticmethod
    def _k_cap_from(red: dict, path: str) -> int:
        prec = int(red["precision"])
        prob = large_k_problem(int(red["M"]))
        _, bound = epsilon_for(prob, int(red["q"]), prec)
        return math.floor(2 * bound.upper_fraction())

    def powers_of_two(self, st: dict):
        base = "stages.powers_of_two"
        m_bound, _ = _pow2_m_bound()
        M = _ceil_int(m_bound)
        self.need(st.get("M") == str(M), f"{base}.M", "M mismatch")
        u = self.reduction(self.get(st, "reduction", base), power_of_two_problem(M), f"{base}.reduction")
        l_cap = max(u, 1)
        self.need(st.get("l_cap") == l_cap, f"{base}.l_cap", "l cap mismatch")
        prec = int(st["reduction"]["precision"])
        m_cap = max(math.floor(l_cap * (1 / _large_tau(prec)).upper_fraction() + 3), 6)
        self.need(st.get("m_cap") == m_cap, f"{base}.m_cap", "m cap mismatch")
        found = [list(t) for t in narayana_powers_of_two(m_cap)]
        self.need(st.get("found") == found, f"{base}.found", "power-of-two list mismatch")
        self.need(st.get("passed") is (found == [[4, 1], [6, 2]]), f"{base}.passed", "verdict mismatch")

    def search(self, st: dict):
        base = "stages.search"
        small = self.doc["stages"]["small_k"]
        box = {"k": [2, small["k_cap"]], "n": [0, small["n_cap"]], "m": [0, small["m_cap"]]}
        self.need(st.get("box") == box, f"{base}.box", "search box does not match the stage caps")
        sols = intersect_bruteforce(2, small["k_cap"], small["n_cap"], small["m_cap"])
        self.need(st.get("solutions") == [s.to_json() for s in sols], f"{base}.solutions",
                  "solution list mismatch")
        nontrivial = [list(s.key()) for s in sols if not s.trivial]
        self.need(st.get("nontrivial") == nontrivial, f"{base}.nontrivial", "nontrivial list mismatch")
        for claim in CLAIMS:
            rep = verify_theorem2(small["k_cap"], small["n_cap"], small["m_cap"], claim=claim,
                                  solver=lambda *a, **kw: sols)
            self.need(st.get("claims", {}).get(claim) == rep.to_json(), f"{base}.claims.{claim}",
                      "claim report mismatch")
        pow2 = self.doc["stages"]["powers_of_two"]["found"]
        branch = [{"n": l + 2, "m": m, "k_min": l + 1} for m, l in pow2]
        self.need(st.get("power_of_two_branch") == branch, f"{base}.power_of_two_branch", "mismatch")
        ok = st["claims"]["corrected"]["passed"]
        self.need(st.get("passed") is ok, f"{base}.passed", "verdict mismatch")

    def run(self) -> str:
        doc = self.doc
        self.need(doc.get("trivial_solutions") == _trivial_list(), "trivial_solutions",
                  "trivial list differs from the enumerated one")
        stages = self.get(doc, "stages", "stages")
        order = ("small_k", "large_k", "powers_of_two", "search")
        for name in order:
            if name in stages:
                log.info("verifying %s", name)
                getattr(self, name)(stages[name])
        extra = set(stages) - set(order)
        self.need(not extra, "stages", f"unexpected stages {sorted(extra)}")
        full = set(order) <= set(stages)
        all_pass = all(stages[s]["passed"] for s in stages)
        verdict = "pass" if full and all_pass else ("fail" if not all_pass else "partial")
        self.need(doc.get("verdict") == verdict, "verdict", f"recorded verdict != recomputed {verdict}")
        body = {k: v for k, v in doc.items() if k != "digest"}
        want = hashlib.sha256(_canonical(body)).hexdigest()
        got = (doc.get("digest") or {}).get("value")
        self.need(got == want, "digest", "sha256 digest mismatch")
        return verdict


def verify_certificate(source: Union[str, Path, dict]) -> str:
    """Recheck a certificate independently of the run that produced it.

    Returns the recomputed verdict; raises :class:`VerificationError` naming the
    first failing record.
    """
    doc = source if isinstance(source, dict) else load_certificate(source)
    try:
        return _Checker(doc).run()
    except (ReductionFailed, PrecisionError, KeyError, TypeError, ValueError) as exc:
        raise VerificationError(f"recheck failed: {exc!r}", record="<structure>") from exc
