"""Logarithmic-method dynamization."""

import random
from collections import Counter

import numpy as np
import pytest

from sfcindex import (
    DatasetSpec,
    Domain,
    DomainViolationError,
    LogIndex,
    StaticIndex,
    brute_force_query,
    gen_points,
)


def occupied_levels(idx):
    return {i for i, b in enumerate(idx.buckets) if b is not None}


def test_len_empty_and_counts():
    idx = LogIndex("z", Domain(8))
    assert len(idx) == 0
    for k in range(1, 20):
        idx.insert((k, k))
        assert len(idx) == k


def test_five_inserts_occupy_buckets_0_and_2():
    idx = LogIndex("z", Domain(8))
    for k in range(5):
        idx.insert((k, 0))
    assert occupied_levels(idx) == {0, 2}
    assert idx.occupancy() == 5


def test_power_of_two_inserts_single_bucket():
    idx = LogIndex("hilbert", Domain(8))
    for k in range(16):
        idx.insert((k, k))
    assert occupied_levels(idx) == {4}
    assert len(idx.buckets[4]) == 16


def test_occupancy_is_binary_of_n_after_every_insert():
    dom = Domain(8)
    pts = gen_points(DatasetSpec("uniform", 300, dom, 15))
    idx = LogIndex("z", dom)
    for i, row in enumerate(pts, start=1):
        idx.insert(tuple(int(c) for c in row))
        assert idx.occupancy() == i
        for level, b in enumerate(idx.buckets):
            if b is not None:
                assert len(b) == 1 << level


def test_buckets_stay_sorted_after_merges():
    dom = Domain(16)
    pts = gen_points(DatasetSpec("clustered", 500, dom, 23))
    idx = LogIndex("hilbert", dom)
    for row in pts:
        idx.insert(tuple(int(c) for c in row))
    for b in idx.buckets:
        if b is not None and len(b) > 1:
            assert (b.codes[1:] >= b.codes[:-1]).all()


def test_merges_conserve_points_and_count():
    dom = Domain(8)
    pts = [(1, 1)] * 9 + [(2, 2)] * 7  # heavy duplication across carries
    idx = LogIndex("z", dom)
    for p in pts:
        idx.insert(p)
    assert len(idx) == 16
    stored = Counter()
    for b in idx.buckets:
        if b is not None:
            stored.update(b.points())
    assert stored == Counter(pts)


def test_merge_move_bound():
    dom = Domain(16)
    n = 2000
    pts = gen_points(DatasetSpec("uniform", n, dom, 31))
    idx = LogIndex("z", dom)
    for row in pts:
        idx.insert(tuple(int(c) for c in row))
    assert idx.merge_moves <= n * (n.bit_length())


def test_zero_radius_single_point():
    idx = LogIndex("z", Domain(8))
    idx.insert((7, 9))
    assert idx.query((7, 9), 0) == [(7, 9)]
    assert idx.query((8, 9), 0) == []


def test_empty_query():
    idx = LogIndex("hilbert", Domain(8))
    assert idx.query((0, 0), 255) == []


def test_rejects_out_of_domain():
    idx = LogIndex("z", Domain(4))
    with pytest.raises(DomainViolationError):
        idx.insert((16, 0))
    assert len(idx) == 0


@pytest.mark.parametrize("curve", ["z", "hilbert"])
def test_static_equivalence_random_sequences(curve):
    rng = random.Random(55)
    for omega, n in ((8, 400), (16, 1200), (32, 600)):
        dom = Domain(omega)
        pts = gen_points(DatasetSpec("gaussian", n, dom, omega))
        idx = LogIndex(curve, dom)
        for row in pts:
            idx.insert(tuple(int(c) for c in row))
        static = StaticIndex.build(pts, curve, dom)
        for _ in range(25):
            q = (rng.randrange(dom.extent), rng.randrange(dom.extent))
            r = rng.randrange(0, dom.extent // 3)
            for metric in ("linf", "l2"):
                got = Counter(idx.query(q, r, metric))
                assert got == Counter(static.query(q, r, metric))
                assert got == Counter(brute_force_query(pts, q, r, metric))
                assert idx.count(q, r, metric) == sum(got.values())
