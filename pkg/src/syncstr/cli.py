"""Command-line front end.

Exit status: 0 on success, 1 when a property or bound is violated (or a
construction/decoding fails), 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from . import bench
from .insdel_code import InfeasibleParams, code_params
from .construction import (
    FULL_SYNC,
    PROPERTIES,
    SELF_MATCHING,
    ConstructionError,
    FormatError,
    construct_self_matching_string,
    construct_sync_string,
    dumps,
    load,
)
from .indexing import ADVERSARIES, DECODERS, MODES
from .sync_properties import SyncViolation

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def fraction_list(text: str) -> list[Fraction]:
    return [fraction(t) for t in text.split(",") if t]


def name_list(choices):
    def parse(text: str) -> list[str]:
        names = [t for t in text.split(",") if t]
        for nm in names:
            if nm not in choices:
                raise argparse.ArgumentTypeError(f"{nm!r} is not one of {', '.join(choices)}")
        return names

    return parse


def u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def default_beta(eps: Fraction) -> Fraction:
    p, q = math.isqrt(eps.numerator), math.isqrt(eps.denominator)
    if p * p == eps.numerator and q * q == eps.denominator:
        return Fraction(p, q)
    return Fraction(math.sqrt(eps)).limit_denominator(1 << 16)


# ---------------------------------------------------------------------------
# output


def emit(text: str, path: str | None) -> None:
    if path and path != "-":
        with open(path, "w", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def render(command: str, config: dict, rows: list[dict], summary: dict, columns, fmt: str) -> str:
    if fmt == "json":
        doc = {"schema": bench.SCHEMA_VERSION, "command": command, "config": config, "rows": rows, "aggregate": summary}
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow(row)
    agg = {c: "" for c in columns}
    agg.update({"schema": bench.SCHEMA_VERSION, "trial": "aggregate"})
    for k, v in summary.items():
        if k in agg and k not in ("schema", "trial"):
            agg[k] = v
    agg.update(summary.get("csv", {}))
    w.writerow(agg)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# commands


def _construct(args):
    if args.property == FULL_SYNC:
        return construct_sync_string(args.n, args.eps, args.seed, c2=args.c2, q2=args.q2, max_resamples=args.max_resamples)
    return construct_self_matching_string(
        args.n, args.eps, args.seed, c3=args.c3, alphabet_size=args.alphabet_size, max_retries=args.max_retries
    )


def cmd_construct(args) -> int:
    try:
        s = _construct(args)
    except ConstructionError as e:
        print(f"construction failed: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    emit(dumps(s), args.output)
    what = "resamplings" if s.property == FULL_SYNC else "retries"
    print(
        f"certified {s.property} eps={s.eps} n={len(s)} q={s.alphabet_size} seed={s.seed} {what}={s.attempts}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        s = load(args.path)
    except FormatError as e:
        print(f"{args.path}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"{args.path}: {e.strerror}", file=sys.stderr)
        return EXIT_USAGE
    eps = args.eps if args.eps is not None else s.eps
    prop = args.property or s.property
    from .sync_properties import check_self_matching, check_synchronization

    verdict = check_synchronization(s.body, eps) if prop == FULL_SYNC else check_self_matching(s.body, eps)
    result = {"property": prop, "eps": str(eps), "n": len(s), "holds": verdict.holds, "witness": None}
    w = verdict.witness
    if isinstance(w, SyncViolation):
        result["witness"] = {"i": w.i, "j": w.j, "k": w.k, "ed": w.ed}
    elif w is not None:
        result["witness"] = {"bad_pairs": len(w), "pairs": [list(p) for p in w.pairs]}
    if args.format == "json":
        sys.stdout.write(json.dumps(result, indent=2) + "\n")
    else:
        status = "PASS" if verdict.holds else "FAIL"
        print(f"{status} {prop} eps={eps} n={len(s)}")
        if isinstance(w, SyncViolation):
            print(f"violation i={w.i} j={w.j} k={w.k} ED={w.ed} <= (1-eps)(k-i)={(1 - eps) * (w.k - w.i)}")
        elif w is not None:
            print(f"bad self-matching of size {len(w)} >= eps*n={eps * len(s)}")
            print(" ".join(f"{a}:{b}" for a, b in w.pairs))
    return EXIT_OK if verdict.holds else EXIT_VIOLATION


def _bench_string(args):
    if args.string:
        return load(args.string)
    # the string has its own seed so trial seeds can vary independently
    return _construct(argparse.Namespace(**{**vars(args), "seed": args.string_seed}))


def cmd_bench_indexing(args) -> int:
    try:
        s = _bench_string(args)
    except (ConstructionError, FormatError, OSError) as e:
        print(f"cannot obtain a synchronization string: {e}", file=sys.stderr)
        return EXIT_VIOLATION if isinstance(e, ConstructionError) else EXIT_USAGE
    beta = args.beta if args.beta is not None else default_beta(s.eps)
    specs = bench.indexing_trials(args.decoders, args.deltas, args.adversaries, args.modes, args.trials, args.seed, beta)
    if not specs:
        print("no decoder is compatible with the requested channel modes", file=sys.stderr)
        return EXIT_USAGE
    rows = bench.run_indexing(s, specs, jobs=args.jobs, timing=args.timing)
    summary = bench.aggregate(rows)
    summary["csv"] = {
        "misdecodings": summary["max_misdecodings"],
        "error_free_violations": summary["max_error_free_violations"],
        "bound_respected": summary["all_bounds_respected"],
        "half_error_respected": summary["all_half_error_bounds_respected"],
    }
    config = {
        "n": len(s), "eps": str(s.eps), "property": s.property, "alphabet_size": s.alphabet_size,
        "string_seed": s.seed, "seed": args.seed, "beta": str(beta), "trials": args.trials,
        "decoders": args.decoders, "deltas": [str(d) for d in args.deltas],
        "adversaries": args.adversaries, "modes": args.modes, "seed_derivation": "blake2b-64(master:decoder:delta:adversary:mode:k)",
    }
    columns = bench.INDEXING_COLUMNS + (("wall_ms",) if args.timing else ())
    out_summary = {k: v for k, v in summary.items() if k != "csv"} if args.format == "json" else summary
    emit(render("bench-indexing", config, rows, out_summary, columns, args.format), args.output)
    ok = summary["all_bounds_respected"] and summary["all_half_error_bounds_respected"]
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_codec_demo(args) -> int:
    try:
        params = code_params(args.delta, args.eps, args.n, args.decoder, sync_eps=args.sync_eps, beta=args.beta)
    except InfeasibleParams as e:
        print(f"infeasible parameters: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    try:
        if params.sync_property == SELF_MATCHING:
            s = construct_self_matching_string(params.n, params.sync_eps, args.string_seed, alphabet_size=params.q_sync)
        else:
            s = construct_sync_string(params.n, params.sync_eps, args.string_seed)
    except ConstructionError as e:
        print(f"construction failed: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    rows = bench.run_codec(params, s, args.adversary, args.mode, args.trials, args.seed)
    recoveries = sum(r["recovered"] for r in rows)
    summary = {
        "schema": bench.SCHEMA_VERSION,
        "rate": params.rate,
        "rate_lower_bound": params.rate_lower_bound,
        "target_rate": float(1 - params.delta - params.eps),
        "radius": params.radius,
        "trials": len(rows),
        "recoveries": recoveries,
        "failures": len(rows) - recoveries,
        "csv": {"recovered": recoveries, "failure": f"{len(rows) - recoveries} failures", "radius": params.radius},
    }
    config = {"params": params.as_dict(), "adversary": args.adversary, "mode": args.mode, "trials": args.trials,
              "seed": args.seed, "string_seed": args.string_seed}
    out_summary = {k: v for k, v in summary.items() if k != "csv"} if args.format == "json" else summary
    emit(render("codec-demo", config, rows, out_summary, bench.CODEC_COLUMNS, args.format), args.output)
    print(
        f"rate={params.rate:.4f} (>= {params.rate_lower_bound:.4f}) target>{1 - float(params.delta) - float(params.eps):.4f} "
        f"k={params.k_msg} radius={params.radius} recovered {recoveries}/{len(rows)}",
        file=sys.stderr,
    )
    return EXIT_OK if recoveries == len(rows) else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# parser


def _string_options(p, required_n: bool = True):
    p.add_argument("--n", type=int, required=required_n, help="string length")
    p.add_argument("--eps", type=fraction, required=required_n, help="property level, e.g. 1/4")
    p.add_argument("--property", choices=PROPERTIES, default=FULL_SYNC)
    p.add_argument("--c2", type=int, default=4, help="full_sync: t = ceil(c2/eps^2)")
    p.add_argument("--q2", type=int, default=None, help="full_sync: residual random alphabet")
    p.add_argument("--c3", type=int, default=8, help="self_matching: q = ceil(c3/eps^3)")
    p.add_argument("--alphabet-size", type=int, default=None, help="self_matching: override q")
    p.add_argument("--max-resamples", type=int, default=None)
    p.add_argument("--max-retries", type=int, default=50)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="syncstr", description="Synchronization strings and insdel codes.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a certified string")
    _string_options(p)
    p.add_argument("--seed", type=u64, default=0)
    p.add_argument("-o", "--output", default=None, help="file to write (default stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a string file")
    p.add_argument("path")
    p.add_argument("--eps", type=fraction, default=None, help="defaults to the file's eps")
    p.add_argument("--property", choices=PROPERTIES, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench-indexing", help="misdecoding counts against the quoted bounds")
    _string_options(p, required_n=False)
    p.add_argument("--string", default=None, help="load the string from a file instead of constructing one")
    p.add_argument("--string-seed", dest="string_seed", type=u64, default=0)
    p.add_argument("--decoders", type=name_list(DECODERS), default=list(DECODERS))
    p.add_argument("--deltas", type=fraction_list, default=[Fraction(1, 20), Fraction(1, 10), Fraction(1, 5)])
    p.add_argument("--adversaries", type=name_list(ADVERSARIES), default=list(ADVERSARIES))
    p.add_argument("--modes", type=name_list(MODES), default=list(MODES))
    p.add_argument("--beta", type=fraction, default=None, help="global decoder; default sqrt(eps)")
    p.add_argument("--trials", type=int, default=10, help="per decoder/delta/adversary/mode")
    p.add_argument("--seed", type=u64, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="add wall_ms (makes reports non-reproducible)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_bench_indexing)

    p = sub.add_parser("codec-demo", help="encode, corrupt and decode end to end")
    p.add_argument("--n", type=int, default=256)
    p.add_argument("--delta", type=fraction, default=Fraction(1, 10))
    p.add_argument("--eps", type=fraction, default=Fraction(1, 2))
    p.add_argument("--decoder", choices=DECODERS, default="global")
    p.add_argument("--sync-eps", type=fraction, default=None)
    p.add_argument("--beta", type=fraction, default=None)
    p.add_argument("--adversary", choices=ADVERSARIES, default="uniform_random")
    p.add_argument("--mode", choices=MODES, default="insdel")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=u64, default=0)
    p.add_argument("--string-seed", type=u64, default=0)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_codec_demo)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "bench-indexing" and args.string is None and (args.n is None or args.eps is None):
        parser.error("bench-indexing needs --string or both --n and --eps")
    if args.command != "verify" and args.eps is not None and not 0 < args.eps < 1:
        parser.error("--eps must lie in (0, 1)")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
