"""Command-line interface.

Exit codes: 0 the requested object was produced, 1 a well-formed negative
(no pair found, verification failed), 2 usage or I/O error.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import re
import sys
import time
from fractions import Fraction
from pathlib import Path

from ._seeding import derive_seed
from .auxgraph import edge_lower_bound_report, implied_gamma
from .certificate import CertificatePair
from .coloring import (ProperColoring, generate_greedy_random, generate_rainbow,
                       generate_round_robin, validate)
from .embed import PipelineParams, lemma24_check, turan_light_audit
from .errors import StructuralError
from .oracle import absence_record, find_disjoint_color_iso_pair, verify_certificate
from .pipeline import run_pipeline

ROW_FIELDS = ["n", "t", "num_colors", "seed", "partition_count", "aux_edges", "m", "delta",
              "bigK", "embed_outcome", "oracle_outcome", "wall_time_ms"]

_EXPR = re.compile(r"^(\d*)\*?n(?:/(\d+))?([+-]\d+)?$")


class UsageError(Exception):
    pass


def parse_colors(expr, n):
    """Evaluate a color budget such as ``40``, ``n-1``, ``2n`` or ``3n/2+1`` at ``n``."""
    e = expr.replace(" ", "")
    if e.isdigit():
        return int(e)
    mt = _EXPR.match(e)
    if not mt:
        raise UsageError(f"cannot parse color budget {expr!r}")
    mul = int(mt.group(1) or 1)
    div = int(mt.group(2) or 1)
    off = int(mt.group(3) or 0)
    return mul * n // div + off


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


def _emit(obj, out):
    text = json.dumps(obj, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def load_coloring(path):
    return ProperColoring.from_dict(_load_json(path))


def make_coloring(family, n, colors, seed):
    if family == "roundrobin":
        return generate_round_robin(n)
    if family == "rainbow":
        return generate_rainbow(n)
    return generate_greedy_random(n, colors, seed)


def _params(args):
    return PipelineParams(t=args.t, gamma=Fraction(args.gamma) if args.gamma else Fraction(1, 1024),
                          relaxed=not args.strict, seed=args.seed)


# ---------------------------------------------------------------- subcommands

def cmd_generate(args):
    n = args.n[0]
    colors = parse_colors(args.colors, n) if args.colors else n - 1 + n % 2
    _emit(make_coloring(args.family, n, colors, args.seed).to_dict(), args.out)
    return 0


def cmd_verify(args):
    rep = validate(load_coloring(args.coloring))
    _emit({"ok": rep.ok, "violations": rep.violations, "unused_colors": rep.unused_colors}, args.out)
    return 0 if rep.ok else 1


def cmd_find_pair(args):
    coloring = load_coloring(args.coloring)
    out = run_pipeline(coloring, _params(args), args.max_tries, args.attempts)
    if out.success:
        _emit(out.certificate.to_dict(), args.out)
        return 0
    _emit({"status": out.status, "attempts": out.attempts, "failures": out.failures}, args.out)
    return 1


def cmd_oracle(args):
    coloring = load_coloring(args.coloring)
    res = find_disjoint_color_iso_pair(coloring, args.t, args.budget)
    if res.certificate is not None:
        _emit(res.certificate.to_dict(), args.out)
        return 0
    if res.absent:
        _emit(absence_record(coloring, args.t), args.out)
    else:
        _emit({"n": coloring.n, "t": args.t, "coloring_hash": coloring.digest(),
               "absent": False, "inconclusive": True, "examined": res.examined}, args.out)
    return 1


def cmd_check_cert(args):
    coloring = load_coloring(args.coloring)
    cert = CertificatePair.from_dict(_load_json(args.certificate))
    rep = verify_certificate(coloring, cert)
    _emit({"ok": rep.ok, "violations": rep.violations}, args.out)
    return 0 if rep.ok else 1


def cmd_audit(args):
    coloring = load_coloring(args.coloring)
    params = _params(args)
    out = run_pipeline(coloring, params, args.max_tries, 1)
    report = {"n": coloring.n, "t": args.t, "num_colors": coloring.num_colors,
              "status": out.status, "partition": out.choice.partition.to_dict(),
              "partition_count": out.choice.count, "threshold": str(out.choice.threshold)}
    gamma = params.gamma if args.gamma else Fraction(implied_gamma(coloring.n, coloring.num_colors, args.t))
    report["edge_bound"] = edge_lower_bound_report(coloring, out.aux, gamma, args.t).to_dict()
    if out.g0 is not None:
        A = out.g0.side_a
        report["regularized"] = out.g0.report()
        if len(A) >= 2:
            report["lemma24"] = lemma24_check(out.g0, A).to_dict()
        report["turan"] = turan_light_audit(out.g0, A, params).to_dict()
    if args.dump_aux:
        report["aux"] = out.aux.to_dict()
    _emit(report, args.out)
    return 0


def run_experiment_rows(ns, t, family, color_exprs, seeds, base_seed, budget=None,
                        cert_dir=None, max_tries=64, attempts=8):
    """ExperimentRow dicts in (n, color budget, seed index) order."""
    rows = []
    for n in ns:
        for ci, expr in enumerate(color_exprs):
            target = parse_colors(expr, n)
            for i in range(seeds):
                seed = derive_seed(base_seed, n, ci, i)
                t0 = time.perf_counter()
                coloring = make_coloring(family, n, target, seed)
                out = run_pipeline(coloring, PipelineParams(t=t, seed=seed), max_tries, attempts)
                if out.success and cert_dir is not None:
                    cert_dir.mkdir(parents=True, exist_ok=True)
                    stem = f"n{n}_c{coloring.num_colors}_s{seed}"
                    (cert_dir / f"coloring_{stem}.json").write_text(json.dumps(coloring.to_dict()))
                    (cert_dir / f"cert_{stem}.json").write_text(json.dumps(out.certificate.to_dict()))
                oracle = "skipped"
                if n < 2 * (t + t * (t - 1) // 2):
                    oracle = "n/a"
                elif (t == 3 and n <= 16) or budget is not None:
                    res = find_disjoint_color_iso_pair(coloring, t, budget)
                    oracle = res.outcome
                    if out.success and res.absent:
                        raise AssertionError("pipeline certificate contradicts an oracle proof of absence")
                g0 = out.g0
                rows.append({
                    "n": n, "t": t, "num_colors": coloring.num_colors, "seed": seed,
                    "partition_count": out.choice.count if out.choice else "",
                    "aux_edges": out.aux.num_edges if out.aux else "",
                    "m": g0.m if g0 else "", "delta": g0.delta if g0 else "",
                    "bigK": str(g0.big_k) if g0 else "",
                    "embed_outcome": out.status, "oracle_outcome": oracle,
                    "wall_time_ms": int(round(1000 * (time.perf_counter() - t0))),
                })
    return rows


def cmd_experiment(args):
    ns = args.n
    exprs = [e for e in args.colors.split(",")] if args.colors else ["n-1"]
    if args.out:
        cert_dir = Path(args.cert_dir) if args.cert_dir else Path(args.out).with_suffix("").with_name(
            Path(args.out).stem + "_certs")
    else:
        cert_dir = Path(args.cert_dir) if args.cert_dir else None
    rows = run_experiment_rows(ns, args.t, args.family, exprs, args.seeds, args.seed,
                               args.budget, cert_dir, args.max_tries, args.attempts)
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.DictWriter(fh, fieldnames=ROW_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    finally:
        if args.out:
            fh.close()
    return 0


# ---------------------------------------------------------------- parser

def build_parser():
    p = argparse.ArgumentParser(prog="htcolor", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, t=True, seed=True):
        sp.add_argument("--out", help="output path (default: stdout)")
        if t:
            sp.add_argument("--t", type=int, default=3)
        if seed:
            sp.add_argument("--seed", type=int, default=0)

    def pipeline_flags(sp):
        mode = sp.add_mutually_exclusive_group()
        mode.add_argument("--strict", action="store_true", help="abort when a cardinality gate fails")
        mode.add_argument("--relaxed", action="store_true", help="record gates only (default)")
        sp.add_argument("--max-tries", type=int, default=64, help="partition samples per attempt")
        sp.add_argument("--attempts", type=int, default=8, help="independent partitions to try")
        sp.add_argument("--gamma", help="color budget coefficient as a fraction, e.g. 1/1024")

    sp = sub.add_parser("generate", help="write a coloring JSON")
    common(sp, t=False)
    sp.add_argument("--n", type=_int_list, required=True)
    sp.add_argument("--family", choices=["roundrobin", "greedy", "rainbow"], default="greedy")
    sp.add_argument("--colors", help="target colors for greedy, e.g. n-1 or 2n")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("verify", help="properness report for a coloring")
    common(sp, t=False, seed=False)
    sp.add_argument("coloring")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("find-pair", help="run the embedding pipeline")
    common(sp)
    pipeline_flags(sp)
    sp.add_argument("coloring")
    sp.set_defaults(func=cmd_find_pair)

    sp = sub.add_parser("oracle", help="brute-force pair search")
    common(sp, seed=False)
    sp.add_argument("--budget", type=int, help="max copies to enumerate")
    sp.add_argument("coloring")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("check-cert", help="verify a certificate against a coloring")
    common(sp, t=False, seed=False)
    sp.add_argument("coloring")
    sp.add_argument("certificate")
    sp.set_defaults(func=cmd_check_cert)

    sp = sub.add_parser("experiment", help="sweep instances and write CSV rows")
    common(sp)
    sp.add_argument("--n", type=_int_list, required=True)
    sp.add_argument("--family", choices=["roundrobin", "greedy", "rainbow"], default="greedy")
    sp.add_argument("--colors", help="comma-separated budgets, e.g. n-1,2n")
    sp.add_argument("--seeds", type=int, default=10)
    sp.add_argument("--budget", type=int, help="run the budgeted oracle where it is not exhaustive")
    sp.add_argument("--cert-dir", help="where success certificates go (default: next to --out)")
    sp.add_argument("--max-tries", type=int, default=64)
    sp.add_argument("--attempts", type=int, default=8)
    sp.set_defaults(func=cmd_experiment)

    sp = sub.add_parser("audit", help="lemma audits on one instance (JSON)")
    common(sp)
    pipeline_flags(sp)
    sp.add_argument("--dump-aux", action="store_true", help="include the auxiliary graph adjacency")
    sp.add_argument("coloring")
    sp.set_defaults(func=cmd_audit)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"htcolor: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, StructuralError, ValueError) as exc:
        print(f"htcolor: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
