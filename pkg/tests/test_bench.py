"""Harness protocol: limits, batching, records, replay."""

import hashlib
import itertools

import pytest

from sfcindex import ConfigurationError, Domain, UnsupportedFeatureError, write_points, write_queries
from sfcindex.bench import (
    BenchConfig,
    ThroughputResult,
    _OracleStructure,
    replay,
    run_dynamic,
    run_static,
    throughput,
    time_limit_seconds,
)


class FakeClock:
    """Monotonic fake: advances a fixed step per reading."""

    def __init__(self, step):
        self.step = step
        self.now = 0.0

    def __call__(self):
        t = self.now
        self.now += self.step
        return t


class NullIndex:
    def query(self, q, r, metric="linf"):
        return []


def test_time_limit_rule():
    assert time_limit_seconds(500_000) == 0.5
    assert time_limit_seconds(40_000_000) == 10.0
    assert time_limit_seconds(20_000_000) == 10.0
    assert time_limit_seconds(1_000_000) == 1.0


def test_throughput_whole_batches_and_overshoot():
    # clock advances 0.2s per reading: elapsed after batch k is 0.2*k
    clock = FakeClock(0.2)
    res = throughput(NullIndex(), [((0, 0), 1)], limit_seconds=0.5, batch_size=64, clock=clock)
    assert res.batches == 3  # stops at the first reading past 0.5s
    assert res.queries == 3 * 64
    assert res.elapsed_ms == pytest.approx(600.0)
    assert res.ms_per_query == pytest.approx(600.0 / 192)


def test_throughput_at_least_one_batch():
    clock = FakeClock(5.0)
    res = throughput(NullIndex(), [((0, 0), 1)], limit_seconds=0.001, batch_size=8, clock=clock)
    assert res.batches == 1
    assert res.queries == 8


def test_throughput_cycles_short_streams():
    seen = []

    class Recorder:
        def query(self, q, r, metric="linf"):
            seen.append(q)
            return []

    queries = [((i, i), 1) for i in range(3)]
    throughput(Recorder(), queries, limit_seconds=0.0, batch_size=7, clock=FakeClock(1.0))
    assert seen == [q for q, _ in itertools.islice(itertools.cycle(queries), 7)]


def test_throughput_rejects_empty_stream():
    with pytest.raises(ConfigurationError):
        throughput(NullIndex(), [], limit_seconds=1.0)


def _config(structure, **kw):
    base = dict(
        structure=structure, dist="uniform", query_dist="uniform",
        ns=(300,), omega=8, rho=0.05, metric="linf", seed=1, runs=3,
        batch=32, limit_seconds=0.01, query_count=64,
    )
    base.update(kw)
    return BenchConfig(**base)


def test_run_static_record_arithmetic():
    records = run_static(_config("curve-z"))
    assert len(records) == 8  # 3 build + 3 query + 2 medians
    phases = [(r.phase, r.is_median) for r in records]
    assert phases.count(("build", False)) == 3
    assert phases.count(("query", False)) == 3
    assert phases.count(("build", True)) == 1
    assert phases.count(("query", True)) == 1
    for r in records:
        assert r.n == 300
        assert r.curve == "z"
        assert r.ms >= 0


def test_median_is_arithmetic_median_of_runs():
    records = run_static(_config("curve-h", runs=3))
    builds = sorted(r.ms for r in records if r.phase == "build" and not r.is_median)
    med = [r for r in records if r.phase == "build" and r.is_median]
    assert len(med) == 1 and med[0].ms == builds[1]
    assert med[0].run == -1


def test_identical_seeds_identical_dataset_hashes():
    a = run_static(_config("curve-z"))
    b = run_static(_config("curve-z"))
    assert a[0].dataset == b[0].dataset
    c = run_static(_config("curve-z", seed=2))
    assert c[0].dataset != a[0].dataset


def test_oracle_structure_runs():
    records = run_static(_config("oracle", runs=1))
    assert len(records) == 4
    assert all(r.structure == "oracle" for r in records)


def test_ns_grid_shares_one_dataset_id():
    records = run_static(_config("curve-z", ns=(100, 200), runs=1))
    assert len(records) == 8
    assert len({r.dataset for r in records}) == 1
    assert {r.n for r in records} == {100, 200}


def test_run_static_rejects_dynamic_structures():
    with pytest.raises(ConfigurationError):
        run_static(_config("curve-z-dyn"))


def test_run_dynamic_records_and_equivalence():
    records = run_dynamic(_config("curve-z-dyn", runs=2))
    phases = [(r.phase, r.is_median) for r in records]
    assert phases.count(("insert", False)) == 2
    assert phases.count(("query", False)) == 2
    assert phases.count(("insert", True)) == 1
    assert phases.count(("query", True)) == 1


def test_run_dynamic_matches_static_answers():
    # same data through both paths must answer identically
    from collections import Counter

    from sfcindex import DatasetSpec, LogIndex, QuerySpec, StaticIndex, gen_points, gen_queries

    dom = Domain(8)
    pts = gen_points(DatasetSpec("uniform", 500, dom, 77))
    static = StaticIndex.build(pts, "z", dom)
    dyn = LogIndex("z", dom)
    for row in pts:
        dyn.insert(tuple(int(c) for c in row))
    for q, r in gen_queries(QuerySpec("uniform", 0.1, 50, dom, 5)):
        assert Counter(dyn.query(q, r)) == Counter(static.query(q, r))


def test_deletions_flag_unsupported():
    with pytest.raises(UnsupportedFeatureError):
        run_dynamic(_config("curve-z-dyn"), deletions=True)


class TestReplay:
    def _write_workload(self, tmp_path, queries):
        dom = Domain(8)
        ppath = tmp_path / "p.txt"
        qpath = tmp_path / "q.txt"
        write_points(ppath, dom, [(1, 1), (2, 2), (200, 200)])
        write_queries(qpath, dom, queries)
        return ppath, qpath

    def test_total_record(self, tmp_path):
        ppath, qpath = self._write_workload(tmp_path, [((1, 1), 2), ((250, 0), 1)])
        records = replay(ppath, qpath, "curve-h")
        assert len(records) == 1
        rec = records[0]
        assert rec.phase == "replay"
        assert rec.queries == 2
        assert rec.n == 3
        assert rec.ms >= 0

    def test_empty_query_file_rejected(self, tmp_path):
        ppath, qpath = self._write_workload(tmp_path, [])
        with pytest.raises(ConfigurationError):
            replay(ppath, qpath, "curve-z")

    def test_all_structures_accepted(self, tmp_path):
        ppath, qpath = self._write_workload(tmp_path, [((2, 2), 3)])
        for structure in ("curve-z", "curve-h", "curve-z-dyn", "curve-h-dyn", "oracle"):
            (rec,) = replay(ppath, qpath, structure)
            assert rec.structure == structure

    def test_replay_deterministic_answers(self, tmp_path):
        ppath, qpath = self._write_workload(tmp_path, [((1, 1), 5), ((9, 9), 30)])
        a = replay(ppath, qpath, "curve-z")
        b = replay(ppath, qpath, "curve-z")
        assert a[0].queries == b[0].queries
        assert a[0].dataset == b[0].dataset
