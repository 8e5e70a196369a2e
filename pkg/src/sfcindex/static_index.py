"""Points sorted by curve code in parallel arrays, plus the radius query.

A query box decomposes into at most 2**d quadtree cells of comparable side;
each cell is one contiguous code interval, found by binary search and scanned
forward with a metric filter.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from .encoding import Cell, CodeRange, Domain, cell_code_range, encode, encode_many
from .errors import DomainViolationError

_PARALLEL_CHUNKS = 4


@dataclass(frozen=True)
class QueryBox:
    """Axis-aligned square [lo, lo+side) per axis, clamped to the domain."""

    lo: tuple[int, ...]
    side: int


def bounding_box(q: Sequence[int], r: int, dom: Domain) -> QueryBox:
    """Smallest axis-aligned square containing the L-inf ball of radius r.

    The low corner clamps to 0 and the side covers through
    min(q + r, extent - 1) on every axis; the square may overhang the domain
    on short axes and is re-clamped wherever it is used.
    """
    dom.require_point(q)
    if r < 0:
        raise ValueError(f"radius must be >= 0, got {r}")
    lo = tuple(int(max(c - r, 0)) for c in q)
    side = max(
        int(min(c + r, dom.extent - 1)) - l + 1 for c, l in zip(q, lo)
    )
    return QueryBox(lo, side)


def cells(box: QueryBox, dom: Domain) -> list[Cell]:
    """The <= 2**d grid-aligned cells of side in [side, 2*side) meeting the box.

    The level comes from the box's stored side, never re-derived from the
    domain-clamped footprint, so clamped boxes keep their decomposition size.
    """
    if box.side < 1:
        raise ValueError(f"box side must be >= 1, got {box.side}")
    level = min(int(max(box.side - 1, 0)).bit_length(), dom.omega)
    axis_anchors = []
    for l in box.lo:
        l = int(l)
        hi = min(l + int(box.side), dom.extent)  # half-open, re-clamped
        if l >= hi:
            return []  # footprint left the domain entirely
        first = (l >> level) << level
        last = ((hi - 1) >> level) << level
        axis_anchors.append((first,) if first == last else (first, last))
    return [Cell(level, anchor) for anchor in product(*axis_anchors)]


class StaticIndex:
    """Immutable point set sorted by curve code.

    points live in an (n, d) int64 array; codes (when stored) in a parallel
    sorted array.  Built once, read concurrently.
    """

    def __init__(self, coords, codes, curve, domain):
        self._coords = coords
        self._codes = codes
        self.curve = curve
        self.domain = domain

    @classmethod
    def build(
        cls,
        points: Sequence[Sequence[int]] | np.ndarray,
        curve: str,
        dom: Domain,
        *,
        store_codes: bool = True,
        parallel_sort: bool = False,
    ) -> "StaticIndex":
        """Sort points by curve code.  Stable: equal codes keep input order."""
        coords = np.asarray(points, dtype=np.int64)
        if coords.size == 0:
            coords = coords.reshape(0, dom.d)
        if coords.ndim != 2 or coords.shape[1] != dom.d:
            raise DomainViolationError(
                f"expected an (n, {dom.d}) point array, got shape {coords.shape}"
            )
        bad = (coords < 0) | (coords >= dom.extent)
        if bad.any():
            i = int(np.argwhere(bad.any(axis=1))[0][0])
            raise DomainViolationError(
                f"point {tuple(int(c) for c in coords[i])} at index {i} outside the domain"
            )
        codes = encode_many(coords, dom, curve)
        if parallel_sort and len(codes) > 1:
            order = _parallel_stable_argsort(codes)
        else:
            order = np.argsort(codes, kind="stable")
        coords = np.ascontiguousarray(coords[order])
        codes = codes[order]
        return cls(coords, codes if store_codes else None, curve, dom)

    @classmethod
    def _from_sorted(cls, coords, codes, curve, domain) -> "StaticIndex":
        """Wrap arrays already sorted by code (merge path; no re-encoding)."""
        return cls(coords, codes, curve, domain)

    def __len__(self) -> int:
        return len(self._coords)

    @property
    def coords(self) -> np.ndarray:
        return self._coords

    @property
    def codes(self) -> np.ndarray | None:
        return self._codes

    def points(self) -> list[tuple[int, ...]]:
        return [tuple(int(c) for c in row) for row in self._coords]

    def query(self, q: Sequence[int], r: int, metric: str = "linf") -> list[tuple[int, ...]]:
        """All stored points within distance r of q (multiset; order unspecified)."""
        out: list[tuple[int, ...]] = []
        for i0, i1 in self._candidate_slices(bounding_box(q, r, self.domain)):
            cand = self._coords[i0:i1]
            keep = _within_mask(cand, q, r, metric, self.domain.extent)
            out.extend(tuple(int(c) for c in row) for row in cand[keep])
        return out

    def count(self, q: Sequence[int], r: int, metric: str = "linf") -> int:
        """Number of stored points within distance r of q."""
        total = 0
        for i0, i1 in self._candidate_slices(bounding_box(q, r, self.domain)):
            cand = self._coords[i0:i1]
            total += int(_within_mask(cand, q, r, metric, self.domain.extent).sum())
        return total

    def _candidate_slices(self, box: QueryBox) -> list[tuple[int, int]]:
        """Index ranges of the sorted arrays covered by the box's cells."""
        slices = []
        for cell in cells(box, self.domain):
            rng = cell_code_range(cell, self.domain, self.curve)
            if self._codes is not None:
                # keep the probe in the array dtype: a Python int would make
                # numpy re-cast the whole sorted array per call
                lo, hi = rng
                if self._codes.dtype == np.uint64:
                    lo, hi = np.uint64(lo), np.uint64(hi)
                i0 = int(np.searchsorted(self._codes, lo, side="left"))
                i1 = int(np.searchsorted(self._codes, hi, side="right"))
            else:
                i0 = self._search_no_rank(rng.lo, upper=False)
                i1 = self._search_no_rank(rng.hi, upper=True)
            if i0 < i1:
                slices.append((i0, i1))
        return slices

    def _search_no_rank(self, code: int, upper: bool) -> int:
        """Binary search re-encoding points on the fly (no stored codes)."""
        lo, hi = 0, len(self._coords)
        while lo < hi:
            mid = (lo + hi) // 2
            c = encode(tuple(int(v) for v in self._coords[mid]), self.domain, self.curve)
            if c < code or (upper and c == code):
                lo = mid + 1
            else:
                hi = mid
        return lo


def _within_mask(cand: np.ndarray, q, r: int, metric: str, extent: int) -> np.ndarray:
    diffs = np.abs(cand - np.asarray(q, dtype=np.int64))
    mask = diffs.max(axis=1) <= r
    if metric == "linf":
        return mask
    if metric != "l2":
        raise ValueError(f"unknown metric {metric!r}, expected 'linf' or 'l2'")
    d = cand.shape[1]
    r2 = r * r
    if r2 >= d * (extent - 1) ** 2:
        return np.ones(len(cand), dtype=bool)
    if d * r2 < 2**64:
        capped = np.minimum(diffs, r).astype(np.uint64)
        return mask & ((capped * capped).sum(axis=1) <= np.uint64(r2))
    out = np.zeros(len(cand), dtype=bool)
    for i in np.flatnonzero(mask):
        out[i] = sum(int(c) * int(c) for c in diffs[i]) <= r2
    return out


def _parallel_stable_argsort(codes: np.ndarray) -> np.ndarray:
    """Stable argsort via chunked thread sort + ordered merge.

    numpy's sort releases the GIL; merging stably in chunk order makes the
    result bit-identical to a sequential stable argsort.
    """
    n = len(codes)
    bounds = np.linspace(0, n, _PARALLEL_CHUNKS + 1).astype(np.int64)
    spans = [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if a < b]

    def sort_span(span):
        a, b = span
        return np.argsort(codes[a:b], kind="stable") + a

    with ThreadPoolExecutor(max_workers=len(spans)) as pool:
        runs = list(pool.map(sort_span, spans))
    while len(runs) > 1:
        merged = []
        for i in range(0, len(runs) - 1, 2):
            merged.append(_merge_runs(codes, runs[i], runs[i + 1]))
        if len(runs) % 2:
            merged.append(runs[-1])
        runs = merged
    return runs[0]


def _merge_runs(codes: np.ndarray, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Stable merge of two argsort runs; left precedes right on ties."""
    lc = codes[left]
    rc = codes[right]
    out = np.empty(len(left) + len(right), dtype=left.dtype)
    out[np.arange(len(left)) + np.searchsorted(rc, lc, side="left")] = left
    out[np.arange(len(right)) + np.searchsorted(lc, rc, side="right")] = right
    return out
