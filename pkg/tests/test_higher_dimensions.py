"""Z-order index in three and four dimensions, including >64-bit codes."""

import random
from collections import Counter

import numpy as np
import pytest

from sfcindex import Domain, LogIndex, StaticIndex, brute_force_query


def random_points(rng, dom, n):
    return np.array(
        [[rng.randrange(dom.extent) for _ in range(dom.d)] for _ in range(n)],
        dtype=np.int64,
    )


@pytest.mark.parametrize("d,omega", [(3, 8), (4, 6), (3, 32), (4, 32)])
def test_static_query_matches_oracle(d, omega):
    # d=3 omega=32 and d=4 omega=32 exercise the object-dtype code path
    rng = random.Random(d * 100 + omega)
    dom = Domain(omega, d=d)
    pts = random_points(rng, dom, 400)
    idx = StaticIndex.build(pts, "z", dom)
    if dom.code_bits <= 64:
        assert idx.codes.dtype == np.uint64
    else:
        assert idx.codes.dtype == object
    for _ in range(15):
        q = tuple(rng.randrange(dom.extent) for _ in range(d))
        r = rng.randrange(0, dom.extent)
        for metric in ("linf", "l2"):
            got = Counter(idx.query(q, r, metric))
            assert got == Counter(brute_force_query(pts, q, r, metric))


def test_dynamic_3d_wide_codes():
    rng = random.Random(9)
    dom = Domain(32, d=3)  # 96-bit codes: merges run on python-int arrays
    pts = random_points(rng, dom, 70)
    idx = LogIndex("z", dom)
    for row in pts:
        idx.insert(tuple(int(c) for c in row))
    assert idx.occupancy() == 70
    q = tuple(int(c) for c in pts[0])
    assert Counter(idx.query(q, 2**31, "linf")) == Counter(
        brute_force_query(pts, q, 2**31, "linf")
    )


def test_cells_bound_is_2_to_the_d():
    from sfcindex import QueryBox, cells

    rng = random.Random(3)
    dom = Domain(8, d=3)
    for _ in range(300):
        side = rng.randrange(1, dom.extent + 1)
        lo = tuple(rng.randrange(0, dom.extent - side + 1) for _ in range(3))
        got = cells(QueryBox(lo, side), dom)
        assert 1 <= len(got) <= 8
