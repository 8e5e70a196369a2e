"""Benchmark protocol: timed construction, batched query throughput, dynamic
insert-then-query runs, and file-workload replay.

Every timed section uses a monotonic clock and excludes data generation and
file I/O.  The throughput loop executes whole batches and re-checks the time
limit only between batches, so it can overshoot by at most one batch.
"""

from __future__ import annotations

import hashlib
import statistics
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .datagen import DatasetSpec, QuerySpec, gen_points, gen_queries
from .dynamic_index import LogIndex
from .encoding import Domain
from .errors import ConfigurationError, UnsupportedFeatureError
from .oracle import brute_force_query
from .static_index import StaticIndex
from .workload_io import ResultRecord, read_points, read_queries

STATIC_STRUCTURES = ("curve-z", "curve-h", "oracle")
DYNAMIC_STRUCTURES = ("curve-z-dyn", "curve-h-dyn")
STRUCTURES = STATIC_STRUCTURES + DYNAMIC_STRUCTURES

_CURVE_OF = {
    "curve-z": "z",
    "curve-h": "hilbert",
    "curve-z-dyn": "z",
    "curve-h-dyn": "hilbert",
    "oracle": "-",
}

DEFAULT_BATCH = 1024
DEFAULT_QUERY_COUNT = 4096

# Offset mixed into the seed for the query stream so point and query draws
# never share a Philox key.
_QUERY_SEED_OFFSET = 0x9E3779B97F4A7C15


def time_limit_seconds(n: int) -> float:
    """Throughput budget for an n-point structure: min(n/1e6, 10) seconds."""
    return min(n / 1e6, 10.0)


class _OracleStructure:
    """Linear-scan baseline exposed with the index query interface."""

    def __init__(self, points: np.ndarray):
        self._points = np.array(points, dtype=np.int64)

    def __len__(self) -> int:
        return len(self._points)

    def query(self, q, r, metric="linf"):
        return brute_force_query(self._points, q, r, metric)


@dataclass
class ThroughputResult:
    elapsed_ms: float
    queries: int
    batches: int

    @property
    def ms_per_query(self) -> float:
        return self.elapsed_ms / self.queries


def throughput(
    index,
    queries: Sequence[tuple[tuple[int, ...], int]],
    limit_seconds: float,
    metric: str = "linf",
    batch_size: int = DEFAULT_BATCH,
    clock: Callable[[], float] = time.perf_counter,
) -> ThroughputResult:
    """Run whole batches of queries, cycling the stream, until the limit.

    Always runs at least one batch; full result lists are materialised inside
    the timed region.
    """
    if len(queries) == 0:
        raise ConfigurationError("throughput needs a non-empty query stream")
    if batch_size < 1:
        raise ConfigurationError(f"batch size must be >= 1, got {batch_size}")
    executed = 0
    batches = 0
    pos = 0
    m = len(queries)
    start = clock()
    while True:
        for _ in range(batch_size):
            q, r = queries[pos]
            index.query(q, r, metric)
            pos += 1
            if pos == m:
                pos = 0
        executed += batch_size
        batches += 1
        elapsed = clock() - start
        if elapsed >= limit_seconds:
            break
    return ThroughputResult(elapsed * 1000.0, executed, batches)


@dataclass
class BenchConfig:
    """One synthetic configuration: a structure plus data/query generators.

    ns is the input-size grid; every size is generated, built and measured
    under the same seed, and all records of the grid share one dataset id.
    """

    structure: str
    dist: str
    query_dist: str
    ns: tuple[int, ...]
    omega: int
    rho: float
    metric: str = "linf"
    seed: int = 0
    runs: int = 3
    batch: int = DEFAULT_BATCH
    limit_seconds: float | None = None
    parallel: bool = False
    no_rank: bool = False
    query_count: int = DEFAULT_QUERY_COUNT

    def __post_init__(self):
        if self.structure not in STRUCTURES:
            raise ConfigurationError(
                f"unknown structure {self.structure!r}, expected one of {STRUCTURES}"
            )
        if self.runs < 1:
            raise ConfigurationError(f"runs must be >= 1, got {self.runs}")
        if not self.ns:
            raise ConfigurationError("at least one input size is required")

    @property
    def domain(self) -> Domain:
        return Domain(self.omega, 2)


def _dataset_id(config: BenchConfig, datasets: Sequence[np.ndarray]) -> str:
    digest = hashlib.sha256()
    for arr in datasets:
        digest.update(arr.tobytes())
    return (
        f"{config.dist}-w{config.omega}-s{config.seed}-{digest.hexdigest()[:10]}"
    )


def _median_record(per_run: list[ResultRecord]) -> ResultRecord:
    first = per_run[0]
    return ResultRecord(
        structure=first.structure,
        dataset=first.dataset,
        n=first.n,
        curve=first.curve,
        rho=first.rho,
        metric=first.metric,
        phase=first.phase,
        ms=statistics.median(rec.ms for rec in per_run),
        queries=int(statistics.median(rec.queries for rec in per_run)),
        run=-1,
        is_median=True,
    )


def _generate(config: BenchConfig):
    dom = config.domain
    datasets = [
        gen_points(DatasetSpec(config.dist, n, dom, config.seed)) for n in config.ns
    ]
    queries = gen_queries(
        QuerySpec(
            config.query_dist,
            config.rho,
            config.query_count,
            dom,
            config.seed ^ _QUERY_SEED_OFFSET,
        )
    )
    return datasets, queries, _dataset_id(config, datasets)


def _build_static(config: BenchConfig, points: np.ndarray):
    if config.structure == "oracle":
        return _OracleStructure(points)
    return StaticIndex.build(
        points,
        _CURVE_OF[config.structure],
        config.domain,
        store_codes=not config.no_rank,
        parallel_sort=config.parallel,
    )


def run_static(config: BenchConfig, clock=time.perf_counter) -> list[ResultRecord]:
    """Timed build plus query throughput, repeated and medianed per size."""
    if config.structure not in STATIC_STRUCTURES:
        raise ConfigurationError(
            f"static benchmark needs one of {STATIC_STRUCTURES}, got {config.structure!r}"
        )
    datasets, queries, dataset_id = _generate(config)
    records: list[ResultRecord] = []
    for n, points in zip(config.ns, datasets):
        limit = config.limit_seconds if config.limit_seconds is not None else time_limit_seconds(n)
        common = dict(
            structure=config.structure,
            dataset=dataset_id,
            n=n,
            curve=_CURVE_OF[config.structure],
            rho=config.rho,
            metric=config.metric,
        )
        builds, qruns = [], []
        for run in range(1, config.runs + 1):
            t0 = clock()
            index = _build_static(config, points)
            ms = (clock() - t0) * 1000.0
            builds.append(ResultRecord(
                phase="build", ms=ms, queries=0, run=run, is_median=False, **common
            ))
            tp = throughput(index, queries, limit, config.metric, config.batch, clock)
            qruns.append(ResultRecord(
                phase="query", ms=tp.elapsed_ms, queries=tp.queries, run=run,
                is_median=False, **common
            ))
        records.extend(builds)
        records.extend(qruns)
        records.append(_median_record(builds))
        records.append(_median_record(qruns))
    return records


def run_dynamic(
    config: BenchConfig, clock=time.perf_counter, deletions: bool = False
) -> list[ResultRecord]:
    """Timed sequential inserts plus query throughput."""
    if deletions:
        raise UnsupportedFeatureError("deletions are not supported by the insertion-only index")
    if config.structure not in DYNAMIC_STRUCTURES:
        raise ConfigurationError(
            f"dynamic benchmark needs one of {DYNAMIC_STRUCTURES}, got {config.structure!r}"
        )
    datasets, queries, dataset_id = _generate(config)
    curve = _CURVE_OF[config.structure]
    records: list[ResultRecord] = []
    for n, points in zip(config.ns, datasets):
        limit = config.limit_seconds if config.limit_seconds is not None else time_limit_seconds(n)
        common = dict(
            structure=config.structure,
            dataset=dataset_id,
            n=n,
            curve=curve,
            rho=config.rho,
            metric=config.metric,
        )
        inserts, qruns = [], []
        for run in range(1, config.runs + 1):
            index = LogIndex(curve, config.domain)
            rows = [tuple(int(c) for c in row) for row in points]
            t0 = clock()
            for p in rows:
                index.insert(p)
            ms = (clock() - t0) * 1000.0
            inserts.append(ResultRecord(
                phase="insert", ms=ms, queries=0, run=run, is_median=False, **common
            ))
            tp = throughput(index, queries, limit, config.metric, config.batch, clock)
            qruns.append(ResultRecord(
                phase="query", ms=tp.elapsed_ms, queries=tp.queries, run=run,
                is_median=False, **common
            ))
        records.extend(inserts)
        records.extend(qruns)
        records.append(_median_record(inserts))
        records.append(_median_record(qruns))
    return records


def replay(
    points_path: str,
    queries_path: str,
    structure: str,
    metric: str = "linf",
    one_based: bool = False,
    parallel: bool = False,
    no_rank: bool = False,
    clock=time.perf_counter,
) -> list[ResultRecord]:
    """Build on a recorded point set and run its query log once, end to end.

    Emits a single total-time record (phase 'replay') covering construction
    plus all queries.
    """
    if structure not in STRUCTURES:
        raise ConfigurationError(
            f"unknown structure {structure!r}, expected one of {STRUCTURES}"
        )
    dom, points = read_points(points_path, one_based)
    queries = read_queries(queries_path, one_based)
    if not queries:
        raise ConfigurationError(f"{queries_path}: query file is empty")
    digest = hashlib.sha256(points.tobytes()).hexdigest()[:10]
    curve = _CURVE_OF[structure]
    t0 = clock()
    if structure in DYNAMIC_STRUCTURES:
        index = LogIndex(curve, dom)
        for row in points:
            index.insert(tuple(int(c) for c in row))
    elif structure == "oracle":
        index = _OracleStructure(points)
    else:
        index = StaticIndex.build(
            points, curve, dom, store_codes=not no_rank, parallel_sort=parallel
        )
    for q, r in queries:
        index.query(q, r, metric)
    ms = (clock() - t0) * 1000.0
    return [ResultRecord(
        structure=structure,
        dataset=f"replay-w{dom.omega}-{digest}",
        n=len(points),
        curve=curve,
        rho=0.0,
        metric=metric,
        phase="replay",
        ms=ms,
        queries=len(queries),
        run=1,
        is_median=False,
    )]
