"""Brute-force reference for distance reporting.

Kept independent of the curve index: a plain linear scan with its own metric
arithmetic, used to cross-check query answers and as a benchmark baseline.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

METRICS = ("linf", "l2")


def brute_force_query(
    points: Sequence[Sequence[int]] | np.ndarray,
    q: Sequence[int],
    r: int,
    metric: str = "linf",
) -> list[tuple[int, ...]]:
    """All points within distance r of q, in input order.

    L2 comparisons are exact squared-integer comparisons (dist**2 <= r**2),
    never floating point.
    """
    if r < 0:
        raise ValueError(f"radius must be >= 0, got {r}")
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}, expected one of {METRICS}")
    arr = np.asarray(points, dtype=np.int64)
    if arr.size == 0:
        return []
    if arr.ndim != 2:
        raise ValueError(f"expected an (n, d) point array, got shape {arr.shape}")
    diffs = np.abs(arr - np.asarray(q, dtype=np.int64))
    within = diffs.max(axis=1) <= r
    if metric == "l2":
        within &= _l2_within(diffs, r)
    return [tuple(int(c) for c in row) for row in arr[within]]


def _l2_within(diffs: np.ndarray, r: int) -> np.ndarray:
    """Exact mask for sum(diffs**2) <= r**2, overflow-safe for 32-bit coords."""
    d = diffs.shape[1]
    r2 = r * r
    # uint64 squares are exact while d * max_diff**2 stays below 2**64;
    # diffs are bounded by r after the caller's linf prefilter.
    if d * r2 < 2**64:
        capped = np.minimum(diffs, r).astype(np.uint64)
        total = (capped * capped).sum(axis=1)
        return (diffs.max(axis=1) <= r) & (total <= np.uint64(r2))
    out = np.empty(len(diffs), dtype=bool)
    for i, row in enumerate(diffs):
        out[i] = sum(int(c) * int(c) for c in row) <= r2
    return out
