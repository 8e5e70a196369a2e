"""Command-line interface: data generation, benchmarks, replay, selftest."""

from __future__ import annotations

import argparse
import sys
from collections import Counter

from . import bench
from .datagen import DISTRIBUTIONS, DatasetSpec, QuerySpec, gen_points, gen_queries
from .dynamic_index import LogIndex
from .encoding import Domain
from .oracle import brute_force_query
from .static_index import StaticIndex
from .workload_io import write_points, write_queries, write_results


def _add_dataset_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dist", choices=DISTRIBUTIONS, default="uniform")
    p.add_argument("--n", default="100000",
                   help="input size, or a comma-separated grid of sizes")
    p.add_argument("--omega", type=int, choices=(8, 16, 32), default=16)
    p.add_argument("--seed", type=int, default=0)


def _add_query_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--query-dist", choices=DISTRIBUTIONS, default="uniform")
    p.add_argument("--rho", type=float, default=0.01)
    p.add_argument("--metric", choices=("linf", "l2"), default="linf")


def _add_bench_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--runs", type=int, default=3)
    p.add_argument("--batch", type=int, default=bench.DEFAULT_BATCH)
    p.add_argument("--limit-seconds", type=float, default=None,
                   help="override the min(n/1e6, 10) throughput limit")
    p.add_argument("--out", required=True, help="results CSV (appended)")
    p.add_argument("--parallel", action="store_true",
                   help="sort with multiple threads during build")
    p.add_argument("--no-rank", action="store_true",
                   help="store only points, re-encode during binary search")


def _parse_ns(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(","))


def _config(args, structure: str) -> bench.BenchConfig:
    return bench.BenchConfig(
        structure=structure,
        dist=args.dist,
        query_dist=args.query_dist,
        ns=_parse_ns(args.n),
        omega=args.omega,
        rho=args.rho,
        metric=args.metric,
        seed=args.seed,
        runs=args.runs,
        batch=args.batch,
        limit_seconds=args.limit_seconds,
        parallel=args.parallel,
        no_rank=args.no_rank,
    )


def cmd_gen(args) -> int:
    dom = Domain(args.omega, 2)
    ns = _parse_ns(args.n)
    if len(ns) != 1:
        print("gen writes a single file; pass one --n value", file=sys.stderr)
        return 2
    points = gen_points(DatasetSpec(args.dist, ns[0], dom, args.seed))
    write_points(args.out, dom, points, binary=args.format == "binary")
    print(f"wrote {len(points)} points to {args.out}")
    if args.queries_out:
        queries = gen_queries(
            QuerySpec(args.query_dist, args.rho, args.queries, dom, args.seed + 1)
        )
        write_queries(args.queries_out, dom, queries)
        print(f"wrote {len(queries)} queries to {args.queries_out}")
    return 0


def cmd_bench_static(args) -> int:
    records = bench.run_static(_config(args, args.structure))
    write_results(args.out, records)
    _summarise(records)
    return 0


def cmd_bench_dynamic(args) -> int:
    records = bench.run_dynamic(_config(args, args.structure), deletions=args.deletions)
    write_results(args.out, records)
    _summarise(records)
    return 0


def cmd_replay(args) -> int:
    records = bench.replay(
        args.points,
        args.queries,
        args.structure,
        metric=args.metric,
        one_based=args.one_based,
        parallel=args.parallel,
        no_rank=args.no_rank,
    )
    write_results(args.out, records)
    _summarise(records)
    return 0


def _summarise(records) -> None:
    for rec in records:
        if rec.is_median or rec.phase == "replay":
            tail = f" ({rec.queries} queries)" if rec.queries else ""
            print(f"{rec.structure} n={rec.n} {rec.phase}: {rec.ms:.3f} ms{tail}")


def cmd_selftest(args) -> int:
    """Small randomized sweep of every structure against the linear scan."""
    failures = 0
    seed = args.seed
    for trial in range(args.trials):
        omega = (8, 16, 32)[trial % 3]
        dist = DISTRIBUTIONS[trial % 4]
        curve = ("z", "hilbert")[trial % 2]
        metric = ("linf", "l2")[(trial // 2) % 2]
        dom = Domain(omega, 2)
        n = 200 + 137 * trial
        points = gen_points(DatasetSpec(dist, n, dom, seed + trial))
        queries = gen_queries(QuerySpec("uniform", 0.05, 8, dom, seed + 1000 + trial))
        static = StaticIndex.build(points, curve, dom)
        dynamic = LogIndex(curve, dom)
        for row in points:
            dynamic.insert(tuple(int(c) for c in row))
        for q, r in queries:
            expected = Counter(brute_force_query(points, q, r, metric))
            if Counter(static.query(q, r, metric)) != expected:
                print(f"FAIL static {curve} {metric} omega={omega} q={q} r={r}")
                failures += 1
            if Counter(dynamic.query(q, r, metric)) != expected:
                print(f"FAIL dynamic {curve} {metric} omega={omega} q={q} r={r}")
                failures += 1
    if failures:
        print(f"selftest: {failures} failures")
        return 1
    print(f"selftest: ok ({args.trials} trials)")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="sfcindex",
        description="Distance reporting over points sorted along a space-filling curve",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="write synthetic points (and queries) to files")
    _add_dataset_args(p_gen)
    _add_query_args(p_gen)
    p_gen.add_argument("--out", required=True, help="points file to write")
    p_gen.add_argument("--format", choices=("text", "binary"), default="text")
    p_gen.add_argument("--queries", type=int, default=1000)
    p_gen.add_argument("--queries-out", default=None, help="optional query file to write")
    p_gen.set_defaults(func=cmd_gen)

    p_static = sub.add_parser("bench-static", help="time construction and query throughput")
    p_static.add_argument("--structure", choices=bench.STATIC_STRUCTURES, default="curve-z")
    _add_dataset_args(p_static)
    _add_query_args(p_static)
    _add_bench_args(p_static)
    p_static.set_defaults(func=cmd_bench_static)

    p_dyn = sub.add_parser("bench-dynamic", help="time sequential inserts then throughput")
    p_dyn.add_argument("--structure", choices=bench.DYNAMIC_STRUCTURES, default="curve-z-dyn")
    p_dyn.add_argument("--deletions", action="store_true",
                       help="not supported; fails with an explanation")
    _add_dataset_args(p_dyn)
    _add_query_args(p_dyn)
    _add_bench_args(p_dyn)
    p_dyn.set_defaults(func=cmd_bench_dynamic)

    p_replay = sub.add_parser("replay", help="build on a point file and run a query log once")
    p_replay.add_argument("--points", required=True)
    p_replay.add_argument("--queries", required=True)
    p_replay.add_argument("--structure", choices=bench.STRUCTURES, default="curve-z")
    p_replay.add_argument("--metric", choices=("linf", "l2"), default="linf")
    p_replay.add_argument("--one-based", action="store_true",
                          help="shift external 1-based coordinates by -1")
    p_replay.add_argument("--parallel", action="store_true")
    p_replay.add_argument("--no-rank", action="store_true")
    p_replay.add_argument("--out", required=True)
    p_replay.set_defaults(func=cmd_replay)

    p_self = sub.add_parser("selftest", help="randomized check against the linear scan")
    p_self.add_argument("--trials", type=int, default=24)
    p_self.add_argument("--seed", type=int, default=0)
    p_self.set_defaults(func=cmd_selftest)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
