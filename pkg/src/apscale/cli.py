"""Command-line surface: dataset generation, clustering runs with JSON
reports, pair metrics, and trend benchmark suites."""

import argparse
import csv
import io
import json
import sys
import time

import numpy as np

from . import datasets, lap, metrics, pap, simcore
from .engine import ApConfig, affinity_propagation
from .kernels import BACKEND
from .simcore import PreferenceSpec, ValidationError


def _write_out(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _preference_spec(args, n):
    if args.preference_file:
        return PreferenceSpec.explicit(np.loadtxt(args.preference_file, ndmin=1))
    if args.preference == "median":
        return PreferenceSpec.median()
    try:
        value = float(args.preference)
    except ValueError:
        raise ValidationError(f"--preference must be 'median' or a number, got {args.preference!r}")
    return PreferenceSpec.uniform(value)


def _ap_config(args):
    return ApConfig(damping=args.damping, max_iter=args.max_iter, convits=args.convits)


def cmd_gen(args):
    spec = datasets.GenSpec(kind=args.kind, n=args.n, seed=args.seed, noise=args.noise)
    points = datasets.generate(spec)
    simcore.save_points(args.output, points)
    return 0


def cmd_cluster(args):
    if args.matrix:
        S = simcore.load_similarity(args.input)
    else:
        if args.preference == "asis":
            raise ValidationError("--preference asis is only valid with --matrix input")
        S = simcore.neg_sq_euclidean(simcore.load_points(args.input))
    if args.preference != "asis":
        S = simcore.install_preferences(S, _preference_spec(args, S.shape[0]))

    cfg = _ap_config(args)
    trace = [] if args.trace else None
    phases = {}
    start = time.perf_counter()
    if args.algo == "ap":
        result = affinity_propagation(S, cfg, trace=trace)
    elif args.algo == "pap":
        pcfg = pap.PapConfig(
            k=args.k,
            expected_max_clusters=args.max_clusters,
            shuffle_seed=None if args.no_shuffle else args.shuffle_seed,
            inner=cfg,
            outer=cfg,
        )
        result, report = pap.pap_cluster(S, pcfg, trace=trace)
        phases = {
            "block_iterations": report.block_iterations,
            "block_converged": report.block_converged,
            "outer_iterations": report.outer_iterations,
            "outer_converged": report.outer_converged,
        }
    else:
        lcfg = lap.LapConfig(
            num_landmarks=args.landmarks,
            m0=args.m0,
            max_depth=args.max_depth,
            refine_sweeps=args.refine_sweeps,
            seed=args.seed,
            inner=cfg,
        )
        result, report = lap.lap_cluster(S, lcfg)
        phases = {
            "phase_iterations": report.phase_iterations,
            "refine_sweeps": report.refine_sweeps,
            "refine_netsims": report.refine_netsims,
        }
        if args.trace:
            trace = report.refine_netsims
    elapsed = time.perf_counter() - start

    report_doc = {
        "algorithm": args.algo,
        "backend": BACKEND,
        "n": int(S.shape[0]),
        "config": {
            "damping": args.damping,
            "max_iter": args.max_iter,
            "convits": args.convits,
            "preference": args.preference,
        },
        "idx": result.idx.tolist(),
        "exemplars": result.exemplars.tolist(),
        "num_clusters": int(result.exemplars.size),
        "dpsim": result.dpsim,
        "expref": result.expref,
        "netsim": result.netsim,
        "iterations": int(result.iterations),
        "converged": bool(result.converged),
        "phases": phases,
        "elapsed_seconds": elapsed,
    }
    _write_out(json.dumps(report_doc, indent=2) + "\n", args.output)
    if args.trace:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["iteration", "netsim"])
        for i, value in enumerate(trace, start=1):
            writer.writerow([i, repr(value)])
        _write_out(buf.getvalue(), args.trace)
    return 0


def cmd_metrics(args):
    predicted = simcore.load_labels(args.predicted)
    truth = simcore.load_labels(args.truth)
    if args.mode == "rates":
        tar, far = metrics.association_rates(predicted, truth)
        print(f"tar {tar:.6f}")
        print(f"far {far:.6f}")
    else:
        print(f"agreement {metrics.agreement(predicted, truth):.6f}")
    return 0


def _bench_similarity(n, seed):
    points = datasets.generate(datasets.GenSpec(kind="random2d", n=n, seed=seed))
    S = simcore.neg_sq_euclidean(points)
    return simcore.install_preferences(S, PreferenceSpec.median())


def _emit_csv(header, rows, path):
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(header)
    writer.writerows(rows)
    _write_out(buf.getvalue(), path)


def cmd_bench(args):
    seeds = range(args.seeds)
    cfg = _ap_config(args)
    if args.suite == "pap-iterations":
        sizes = [int(s) for s in args.sizes.split(",")]
        rows = []
        for n in sizes:
            ap_iters, pap_iters = [], []
            for seed in seeds:
                S = _bench_similarity(n, seed)
                ap_res = affinity_propagation(S, cfg)
                pap_res, report = pap.pap_cluster(
                    S, pap.PapConfig(k=args.k, inner=cfg, outer=cfg, shuffle_seed=seed))
                rows.append([n, seed, ap_res.iterations, report.outer_iterations,
                             repr(ap_res.netsim), repr(pap_res.netsim)])
                ap_iters.append(ap_res.iterations)
                pap_iters.append(report.outer_iterations)
            rows.append([n, "mean", float(np.mean(ap_iters)), float(np.mean(pap_iters)), "", ""])
        _emit_csv(["n", "seed", "ap_iterations", "pap_outer_iterations", "ap_netsim", "pap_netsim"],
                  rows, args.output)
    elif args.suite == "lap-accuracy":
        landmark_counts = [int(s) for s in args.landmarks.split(",")]
        per_seed = {}
        for seed in seeds:
            S = _bench_similarity(args.n, seed)
            ap_res = affinity_propagation(S, cfg)
            per_seed[seed] = (S, ap_res)
        rows = []
        for count in landmark_counts:
            agreements = []
            for seed in seeds:
                S, ap_res = per_seed[seed]
                lap_res, _ = lap.lap_cluster(
                    S, lap.LapConfig(num_landmarks=count, seed=seed, inner=cfg))
                agree = metrics.agreement(lap_res.idx, ap_res.idx)
                rows.append([count, seed, repr(agree), repr(lap_res.netsim), repr(ap_res.netsim)])
                agreements.append(agree)
            rows.append([count, "mean", repr(float(np.mean(agreements))), "", ""])
        _emit_csv(["landmarks", "seed", "agreement", "lap_netsim", "ap_netsim"], rows, args.output)
    else:  # pap-k-sweep
        ks = [int(s) for s in args.ks.split(",")]
        rows = []
        for k in ks:
            outer_iters, netsims = [], []
            for seed in seeds:
                S = _bench_similarity(args.n, seed)
                pap_res, report = pap.pap_cluster(
                    S, pap.PapConfig(k=k, inner=cfg, outer=cfg, shuffle_seed=seed))
                rows.append([k, seed, report.outer_iterations,
                             int(pap_res.exemplars.size), repr(pap_res.netsim)])
                outer_iters.append(report.outer_iterations)
                netsims.append(pap_res.netsim)
            rows.append([k, "mean", float(np.mean(outer_iters)), "", repr(float(np.mean(netsims)))])
        _emit_csv(["k", "seed", "outer_iterations", "num_clusters", "netsim"], rows, args.output)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="apscale",
                                     description="Exemplar clustering on dense similarity matrices")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a synthetic point CSV")
    p_gen.add_argument("--kind", default="random2d", choices=datasets.KINDS)
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--noise", type=float, default=0.0)
    p_gen.add_argument("-o", "--output", required=True)
    p_gen.set_defaults(func=cmd_gen)

    p_cluster = sub.add_parser("cluster", help="cluster a point or similarity CSV")
    p_cluster.add_argument("input")
    p_cluster.add_argument("--matrix", action="store_true",
                           help="input is a dense similarity matrix, not points")
    p_cluster.add_argument("--algo", default="ap", choices=("ap", "pap", "lap"))
    p_cluster.add_argument("--preference", default="median",
                           help="'median', a uniform value, or 'asis' to keep a matrix diagonal")
    p_cluster.add_argument("--preference-file", default=None,
                           help="explicit per-point preference vector (single column)")
    p_cluster.add_argument("--damping", type=float, default=0.5)
    p_cluster.add_argument("--max-iter", type=int, default=1000)
    p_cluster.add_argument("--convits", type=int, default=50)
    p_cluster.add_argument("--k", type=int, default=4, help="PAP block count")
    p_cluster.add_argument("--max-clusters", type=int, default=50,
                           help="PAP expected maximum cluster count (k-bound check)")
    p_cluster.add_argument("--shuffle-seed", type=int, default=0)
    p_cluster.add_argument("--no-shuffle", action="store_true")
    p_cluster.add_argument("--landmarks", type=int, default=100, help="LAP landmark count")
    p_cluster.add_argument("--m0", type=int, default=5000)
    p_cluster.add_argument("--max-depth", type=int, default=3)
    p_cluster.add_argument("--refine-sweeps", type=int, default=30)
    p_cluster.add_argument("--seed", type=int, default=0, help="LAP sampling seed")
    p_cluster.add_argument("--trace", default=None,
                           help="write per-iteration netsim CSV to this path")
    p_cluster.add_argument("-o", "--output", default=None)
    p_cluster.set_defaults(func=cmd_cluster)

    p_metrics = sub.add_parser("metrics", help="compare two label CSVs")
    p_metrics.add_argument("predicted")
    p_metrics.add_argument("truth")
    p_metrics.add_argument("--mode", default="rates", choices=("rates", "agreement"))
    p_metrics.set_defaults(func=cmd_metrics)

    p_bench = sub.add_parser("bench", help="run a trend benchmark suite (CSV output)")
    p_bench.add_argument("--suite", required=True,
                         choices=("pap-iterations", "lap-accuracy", "pap-k-sweep"))
    p_bench.add_argument("--sizes", default="100,1000", help="pap-iterations dataset sizes")
    p_bench.add_argument("--n", type=int, default=1000)
    p_bench.add_argument("--k", type=int, default=4)
    p_bench.add_argument("--ks", default="2,4,8,16", help="pap-k-sweep block counts")
    p_bench.add_argument("--landmarks", default="100,200,300,400,500")
    p_bench.add_argument("--seeds", type=int, default=10)
    p_bench.add_argument("--damping", type=float, default=0.5)
    p_bench.add_argument("--max-iter", type=int, default=1000)
    p_bench.add_argument("--convits", type=int, default=50)
    p_bench.add_argument("-o", "--output", default=None)
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
