"""Command-line entry point ``rankring``.

Exit codes: 0 success, 1 computational failure (decoder gave up, work too
large, failed reference check), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import statistics
import sys
import time
from pathlib import Path
from typing import List, Optional

from .codes import correction_capability, min_rank_distance
from .decoder import (
    DecoderParams,
    approx_expected_trials,
    decode,
    default_u,
    expected_trials,
    operation_count,
    pir_decode,
)
from .errors import FormatError, RankRingError, TooLarge, TrialsExhausted
from .instances import default_extension, generate_instance
from .io import (
    dump_json,
    instance_to_json,
    is_pir_file,
    load_json,
    parse_code,
    parse_instance,
    parse_pir_extension,
    parse_pir_instance,
)
from .pir import PirCode, pir_min_distance
from .reference_checks import GROUPS, run_checks
from .ring import ChainRing
from .shapes import beta, enumerate_submodules

BENCH_FIELDS = [
    "p", "nu", "m", "n", "k", "r", "algorithm", "u", "runs",
    "mean_trials", "median_trials", "expected_trials", "approx_trials", "ratio",
]


class UsageError(RankRingError):
    pass


def _emit(args, payload, human: str, out) -> None:
    if args.format == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    elif args.format == "csv" and isinstance(payload, list) and payload and isinstance(payload[0], dict):
        w = csv.DictWriter(out, fieldnames=list(payload[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(payload)
    else:
        out.write(human + "\n")


def _fmt_vec(ext, v) -> str:
    return "(" + ", ".join(ext.format(x) for x in v) + ")"


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify_examples(args, out) -> int:
    if args.fixtures is not None and not Path(args.fixtures).is_dir():
        raise FormatError("--fixtures", f"{args.fixtures} is not a directory")
    checks = run_checks(args.only, args.fixtures)
    ok = all(c.ok for c in checks)
    if args.format == "csv":
        rows = [{"group": c.group, "check": c.name, "expected": json.dumps(c.to_json()["expected"]),
                 "computed": json.dumps(c.to_json()["computed"]), "ok": c.ok} for c in checks]
        _emit(args, rows, "", out)
    else:
        lines = [f"{'PASS' if c.ok else 'FAIL'}  [{c.group}] {c.name}: expected {c.to_json()['expected']}, "
                 f"computed {c.to_json()['computed']}" for c in checks]
        lines.append(f"{sum(c.ok for c in checks)}/{len(checks)} checks passed")
        _emit(args, {"checks": [c.to_json() for c in checks], "ok": ok}, "\n".join(lines), out)
    return 0 if ok else 1


def cmd_min_distance(args, out) -> int:
    obj = load_json(args.code)
    if is_pir_file(obj):
        pext = parse_pir_extension(obj)
        if "gens" not in obj or not isinstance(obj["gens"], list) or not obj["gens"]:
            raise FormatError("gens", "expected a non-empty list of rows")
        d = pir_min_distance(PirCode(pext, obj["gens"]), args.method, args.cap)
    else:
        d = min_rank_distance(parse_code(obj), args.method, args.cap)
    payload = {"min_distance": d, "correction_capability": correction_capability(d), "method": args.method}
    _emit(args, payload, str(d), out)
    return 0


def cmd_count(args, out) -> int:
    _check_positive(args, "p", "nu", "n")
    if not 0 <= args.k <= args.n:
        raise UsageError(f"--k must lie in [0, n], got {args.k}")
    if args.method == "enumerate":
        ring = ChainRing(args.p, args.nu)
        value = sum(1 for _ in enumerate_submodules(ring, args.n, rank_filter=args.k, cap=1 << 62))
    else:
        value = beta(args.p, args.nu, args.k, args.n)
    payload = {"p": args.p, "nu": args.nu, "n": args.n, "k": args.k, "count": value, "method": args.method}
    _emit(args, payload, str(value), out)
    return 0


def _params(args) -> DecoderParams:
    return DecoderParams(
        algorithm=args.algorithm,
        u=args.u,
        max_trials=args.max_trials,
        seed=args.seed,
        workers=args.workers,
        solution_enumeration_cap=args.enumerate_solutions,
    )


def cmd_decode(args, out) -> int:
    obj = load_json(args.instance)
    params = _params(args)
    if is_pir_file(obj):
        pext, insts = parse_pir_instance(obj)
        rep = pir_decode(pext, insts, params)
        payload = rep.to_json()
        ext = pext.components[0]
        human = f"e = {_fmt_vec(ext, rep.error)} over Z/{pext.eta}\ntrials = {rep.trials}"
    else:
        inst, _ = parse_instance(obj)
        rep = decode(inst, params)
        payload = rep.to_json()
        human = (f"e = {_fmt_vec(inst.ext, rep.error)}\nrank = {rep.r}, trials = {rep.trials}, "
                 f"solve failures = {rep.solve_failures}, rank mismatches = {rep.rank_mismatches}")
    _emit(args, payload, human, out)
    return 0


def cmd_estimate(args, out) -> int:
    _check_positive(args, "p", "nu", "m", "n")
    a = (args.p, args.nu, args.m, args.n, args.k, args.r, args.algorithm, args.u)
    exact = expected_trials(*a)
    approx = approx_expected_trials(*a)
    ops = operation_count(*a)
    u = args.u if args.u is not None else default_u(args.algorithm, args.m, args.n, args.k)
    payload = {
        "algorithm": args.algorithm, "u": u,
        "expected_trials": str(exact), "expected_trials_float": float(exact),
        "approx_trials": approx, "operations": str(ops), "operations_float": float(ops),
    }
    human = (f"algorithm {args.algorithm}, u = {u}\nexpected trials = {float(exact):.6g} ({exact})\n"
             f"approximation = {approx}\noperations = {float(ops):.6g}")
    if args.format == "csv":
        payload = [payload]
    _emit(args, payload, human, out)
    return 0


def cmd_gen(args, out) -> int:
    _check_positive(args, "p", "nu", "m", "n")
    target = Path(args.output)
    if not target.parent.is_dir():
        raise FormatError("-o", f"directory {target.parent} does not exist")
    ext = default_extension(args.p, args.nu, args.m)
    if not 0 <= args.k < args.n or not 0 <= args.r <= min(args.m, args.n):
        raise UsageError("need 0 <= k < n and 0 <= r <= min(m, n)")
    planted = generate_instance(ext, args.n, args.k, args.r, args.seed)
    dump_json(instance_to_json(planted.instance, planted.code), target)
    secret = target.with_name(target.name + ".planted.json")
    dump_json({
        "error": [list(x) for x in planted.error],
        "support": [list(x) for x in planted.support],
        "coords": planted.coords,
        "seed": planted.seed,
    }, secret)
    payload = {"instance": str(target), "planted": str(secret)}
    _emit(args, payload, f"wrote {target} and {secret}", out)
    return 0


def _parse_point(text: str):
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--point expects six integers p,nu,m,n,k,r; got {text!r}")
    if len(vals) != 6:
        raise UsageError(f"--point expects six integers p,nu,m,n,k,r; got {text!r}")
    return vals


def bench_point(point, algorithm: int, runs: int, budget: float, max_total_trials: int, u=None) -> dict:
    p, nu, m, n, k, r = point
    exact = expected_trials(p, nu, m, n, k, r, algorithm, u)
    if float(exact) * runs > max_total_trials:
        raise TooLarge(f"point {point}: about {float(exact) * runs:.3g} trials exceed the budget {max_total_trials}")
    ext = default_extension(p, nu, m)
    trials: List[int] = []
    t0 = time.perf_counter()
    for seed in range(runs):
        planted = generate_instance(ext, n, k, r, seed)
        rep = decode(planted.instance, DecoderParams(algorithm=algorithm, u=u, seed=seed))
        trials.append(rep.trials)
        if time.perf_counter() - t0 > budget:
            raise TooLarge(f"point {point}: time budget of {budget} s exceeded after {seed + 1} runs")
    mean = statistics.fmean(trials)
    return {
        "p": p, "nu": nu, "m": m, "n": n, "k": k, "r": r, "algorithm": algorithm,
        "u": u if u is not None else default_u(algorithm, m, n, k), "runs": runs,
        "mean_trials": round(mean, 6), "median_trials": statistics.median(trials),
        "expected_trials": round(float(exact), 6),
        "approx_trials": approx_expected_trials(p, nu, m, n, k, r, algorithm, u),
        "ratio": round(mean / float(exact), 6),
    }


def cmd_bench(args, out) -> int:
    points = [_parse_point(t) for t in args.point or []]
    if args.runs < 1:
        raise UsageError("--runs must be positive")
    algs = [1, 2] if args.algorithm == "both" else [int(args.algorithm)]
    rows = [bench_point(pt, a, args.runs, args.budget, args.max_total_trials, args.u) for pt in points for a in algs]
    if args.format == "json":
        _emit(args, rows, "", out)
    else:
        # csv is the natural human form here too
        w = csv.DictWriter(out, fieldnames=BENCH_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return 0


def _check_positive(args, *names):
    for name in names:
        if getattr(args, name) < 1:
            raise UsageError(f"--{name} must be positive, got {getattr(args, name)}")


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    def common(default="human"):
        # a fresh parent per subcommand: argparse shares parent actions
        parent = argparse.ArgumentParser(add_help=False)
        parent.add_argument("--format", choices=["human", "json", "csv"], default=default)
        return [parent]

    parser = argparse.ArgumentParser(prog="rankring", description="Rank-metric codes over finite chain rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-examples", parents=common(), help="reproduce the shipped worked examples")
    p.add_argument("--only", action="append", choices=GROUPS, help="restrict to a group (repeatable)")
    p.add_argument("--fixtures", help="directory holding the example JSON files")
    p.set_defaults(func=cmd_verify_examples)

    p = sub.add_parser("min-distance", parents=common(), help="minimum rank distance of a code file")
    p.add_argument("--code", required=True)
    p.add_argument("--method", choices=["socle-projection", "brute"], default="socle-projection")
    p.add_argument("--cap", type=int, default=None, help="maximum number of codewords to enumerate")
    p.set_defaults(func=cmd_min_distance)

    p = sub.add_parser("count", parents=common(), help="number of rank-k submodules of R^n")
    for name in ("p", "nu", "n", "k"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--method", choices=["formula", "enumerate"], default="formula")
    p.set_defaults(func=cmd_count)

    def decoder_flags(p):
        p.add_argument("--algorithm", type=int, choices=[1, 2], default=2)
        p.add_argument("--u", type=int, default=None)

    p = sub.add_parser("decode", parents=common("json"), help="solve a rank syndrome decoding instance")
    p.add_argument("--instance", required=True)
    decoder_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-trials", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--enumerate-solutions", type=int, default=0, metavar="CAP",
                   help="also try up to CAP solutions of each solvable system")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("estimate", parents=common(), help="expected trials and operation count")
    for name in ("p", "nu", "m", "n", "k", "r"):
        p.add_argument(f"--{name}", type=int, required=True)
    decoder_flags(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("gen", parents=common(), help="write a planted instance")
    for name in ("p", "nu", "m", "n", "k", "r"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", parents=common(), help="empirical versus predicted trials (CSV)")
    p.add_argument("--point", action="append", metavar="p,nu,m,n,k,r")
    p.add_argument("--algorithm", choices=["1", "2", "both"], default="both")
    p.add_argument("--u", type=int, default=None)
    p.add_argument("--runs", type=int, default=200)
    p.add_argument("--budget", type=float, default=600.0, help="seconds per point")
    p.add_argument("--max-total-trials", type=int, default=10 ** 6)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (TrialsExhausted, TooLarge) as exc:
        err.write(f"error: {exc}\n")
        return 1
    except RankRingError as exc:
        err.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
