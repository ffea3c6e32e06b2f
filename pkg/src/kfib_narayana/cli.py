"""Command-line interface: ``kfib-narayana`` or ``python -m kfib_narayana``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from functools import partial
from itertools import islice
from typing import List, Optional

import mpmath

from . import __version__
from .adaptive import AdaptiveReal
from .algebraic import dominant_root_alpha, log_height, narayana_lambda
from .bounds import large_k_absolute_bounds, small_k_absolute_bounds
from .errors import DomainError, PrecisionError, ReductionFailed, VerificationError
from .reduction import (
    A_large_k,
    A_small_k,
    ReductionProblem,
    baker_davenport,
    lambda_source,
    mu_large_k,
    mu_small_k,
    tau_large_k,
    tau_small_k,
)
from .search import intersect_bruteforce, narayana_powers_of_two
from .sequences import KFibParams, kfib_iter, narayana_iter

log = logging.getLogger("kfib_narayana")


def _dump(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _show(x: AdaptiveReal, digits: int) -> str:
    return f"{mpmath.nstr(x.midpoint, digits)} ± {mpmath.nstr(x.radius, 3)}"


def _digits(prec: int) -> int:
    return max(15, int(prec * 0.30103))


# seq ---------------------------------------------------------------------


def cmd_seq(args) -> int:
    if args.kind == "kfib":
        KFibParams(args.k, args.n)
        stream = kfib_iter(args.k, args.n)
    else:
        if args.m < 0:
            raise DomainError("m must be >= 0")
        stream = narayana_iter(args.m)
    for _, v in islice(stream, args.count):
        print(v)
    return 0


# root / height -------------------------------------------------------------


def cmd_root(args) -> int:
    x = dominant_root_alpha(args.k, args.prec) if args.which == "alpha" else narayana_lambda(args.prec)
    print(_show(x, _digits(args.prec)))
    return 0


def cmd_height(args) -> int:
    try:
        coeffs = [int(c) for c in args.minpoly.replace(" ", "").split(",") if c]
    except ValueError as exc:
        raise DomainError(f"bad coefficient list {args.minpoly!r}") from exc
    print(_show(log_height(coeffs, args.prec), _digits(args.prec)))
    return 0


# bounds --------------------------------------------------------------------


def cmd_bounds(args) -> int:
    report = small_k_absolute_bounds(args.k) if args.stage == "small-k" else large_k_absolute_bounds()
    _dump(report.to_json())
    return 0


# reduce --------------------------------------------------------------------


def _real_arg(text: str):
    """A decimal literal (exact), or ``lambda``."""
    if text.strip().lower() == "lambda":
        return lambda_source
    try:
        return Fraction(text)
    except ValueError as exc:
        raise DomainError(f"not a number: {text!r}") from exc


def build_reduction(tau: str, mu_kind: str, M: int, A: Optional[str], B: Optional[str]) -> ReductionProblem:
    if tau == "lambda-log2":
        tau_src, k = tau_large_k, None
    elif tau.startswith("alpha-lambda:"):
        try:
            k = int(tau.split(":", 1)[1])
        except ValueError as exc:
            raise DomainError(f"bad k in {tau!r}") from exc
        if k < 2:
            raise DomainError("k must be >= 2")
        tau_src = partial(tau_small_k, k)
    else:
        raise DomainError(f"unknown tau {tau!r}")
    if mu_kind == "small-k":
        if k is None:
            raise DomainError("mu-kind small-k needs --tau alpha-lambda:K")
        mu_src = partial(mu_small_k, k)
        a_default, b_default = A_small_k, lambda_source
    elif mu_kind == "large-k":
        mu_src = mu_large_k
        a_default, b_default = A_large_k, 2
    else:
        raise DomainError(f"unknown mu kind {mu_kind!r}")
    A_val = a_default if A is None else _real_arg(A)
    B_val = b_default if B is None else _real_arg(B)
    return ReductionProblem(tau_src, mu_src, A_val, B_val, M, label=f"{tau} / {mu_kind}")


def cmd_reduce(args) -> int:
    try:
        M = int(Fraction(args.M).__ceil__())
    except ValueError as exc:
        raise DomainError(f"bad M {args.M!r}") from exc
    prob = build_reduction(args.tau, args.mu_kind, M, args.A, args.B)
    out = baker_davenport(prob, args.start_prec, args.max_prec)
    _dump(out.to_json())
    return 0


# search --------------------------------------------------------------------


def cmd_search(args) -> int:
    if args.what == "intersect":
        sols = intersect_bruteforce(args.k_lo, args.k_hi, args.n_max, args.m_max,
                                    n_min=args.n_min, m_min=args.m_min, workers=args.workers)
        if not args.with_trivial:
            sols = [s for s in sols if not s.trivial]
        _dump([s.to_json() for s in sols])
    else:
        pairs = narayana_powers_of_two(args.m_max, include_ones=args.include_ones)
        _dump([{"m": m, "l": l} for m, l in pairs])
    return 0


# pipeline ------------------------------------------------------------------


def cmd_pipeline(args) -> int:
    from .pipeline import (PipelineConfig, emit_certificate, run_large_k_stage, run_pipeline,
                           run_small_k_stage, verify_certificate)

    if args.action == "verify":
        try:
            verdict = verify_certificate(args.cert)
        except VerificationError as exc:
            log.error("verification failed at %s: %s", exc.record, exc)
            print("fail")
            return 1
        print(verdict)
        return 0 if verdict == "pass" else 1
    cfg = PipelineConfig.load(args.config) if args.config else PipelineConfig()
    if args.workers:
        cfg.workers = args.workers
    if args.action == "run":
        body = run_pipeline(cfg)
        out = args.out or cfg.out
        if out:
            emit_certificate(body, out)
        else:
            from .pipeline import certificate_bytes
            sys.stdout.write(certificate_bytes(body).decode())
        log.info("verdict: %s", body["verdict"])
        return 0 if body["verdict"] == "pass" else 1
    record = run_small_k_stage(cfg) if args.action == "small-k" else run_large_k_stage(cfg)
    summary = {k: v for k, v in record.items() if k != "records"}
    _dump(summary)
    return 0 if record["passed"] else 1


# parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kfib-narayana", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    seq = sub.add_parser("seq", help="sequence values").add_subparsers(dest="kind", required=True)
    s = seq.add_parser("kfib", help="F_n^(k)")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--count", type=int, default=1, help="print this many consecutive terms")
    s = seq.add_parser("narayana", help="N_m")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--count", type=int, default=1)
    for q in seq.choices.values():
        q.set_defaults(func=cmd_seq)

    root = sub.add_parser("root", help="certified dominant roots").add_subparsers(dest="which", required=True)
    r = root.add_parser("alpha", help="dominant root of x^k - ... - 1")
    r.add_argument("--k", type=int, required=True)
    r.add_argument("--prec", type=int, default=256)
    r.set_defaults(func=cmd_root)
    r = root.add_parser("lambda", help="real root of x^3 - x^2 - 1")
    r.add_argument("--prec", type=int, default=256)
    r.set_defaults(func=cmd_root)

    h = sub.add_parser("height", help="logarithmic height from a minimal polynomial")
    h.add_argument("--minpoly", required=True,
                   help="integer coefficients, leading first: '1,-1,0,-1' is x^3 - x^2 - 1")
    h.add_argument("--prec", type=int, default=256)
    h.set_defaults(func=cmd_height)

    b = sub.add_parser("bounds", help="absolute bound chains (JSON)").add_subparsers(dest="stage", required=True)
    bs = b.add_parser("small-k")
    bs.add_argument("--k", type=int, required=True)
    bs.set_defaults(func=cmd_bounds)
    b.add_parser("large-k").set_defaults(func=cmd_bounds)

    red = sub.add_parser("reduce", help="one Baker-Davenport reduction (JSON)")
    red.add_argument("--tau", required=True, help="lambda-log2 or alpha-lambda:K")
    red.add_argument("--mu-kind", required=True, choices=["small-k", "large-k"])
    red.add_argument("--M", required=True, help="bound on the integer coefficient (decimal)")
    red.add_argument("--A", default=None, help="decimal; default is the stage's certified A")
    red.add_argument("--B", default=None, help="decimal or 'lambda'; default per stage")
    red.add_argument("--start-prec", type=int, default=256)
    red.add_argument("--max-prec", type=int, default=16384)
    red.set_defaults(func=cmd_reduce)

    srch = sub.add_parser("search", help="exhaustive search (JSON)").add_subparsers(dest="what", required=True)
    si = srch.add_parser("intersect", help="F_n^(k) = N_m; nontrivial only unless --with-trivial")
    si.add_argument("--k-lo", type=int, required=True)
    si.add_argument("--k-hi", type=int, required=True)
    si.add_argument("--n-max", type=int, required=True)
    si.add_argument("--m-max", type=int, required=True)
    si.add_argument("--n-min", type=int, default=0)
    si.add_argument("--m-min", type=int, default=0)
    si.add_argument("--workers", type=int, default=1)
    si.add_argument("--with-trivial", action="store_true")
    si.set_defaults(func=cmd_search)
    sp = srch.add_parser("pow2", help="N_m = 2^l")
    sp.add_argument("--m-max", type=int, required=True)
    sp.add_argument("--include-ones", action="store_true")
    sp.set_defaults(func=cmd_search)

    pl = sub.add_parser("pipeline", help="full run and certificates").add_subparsers(dest="action", required=True)
    for name in ("run", "small-k", "large-k"):
        q = pl.add_parser(name)
        q.add_argument("--config", default=None, help="JSON file mirroring PipelineConfig")
        q.add_argument("--workers", type=int, default=None)
        if name == "run":
            q.add_argument("--out", default=None, help="certificate path (stdout if omitted)")
        q.set_defaults(func=cmd_pipeline)
    pv = pl.add_parser("verify")
    pv.add_argument("cert")
    pv.set_defaults(func=cmd_pipeline)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (DomainError, PrecisionError, ReductionFailed) as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        return 2
    except OSError as exc:
        log.error("%s", exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
