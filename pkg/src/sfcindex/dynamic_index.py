"""Insertion-only dynamization of the static index.

Classic logarithmic method: bucket i, when occupied, holds a static index of
exactly 2**i points, so the occupancy pattern is the binary representation of
the total count.  An insert starts a size-1 bucket and carries upward, merging
equal-sized buckets by a linear merge of their sorted code arrays.  Queries
are decomposable, so the answer is the union over occupied buckets.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .encoding import Domain, encode
from .static_index import StaticIndex


class LogIndex:
    def __init__(self, curve: str, domain: Domain):
        self.curve = curve
        self.domain = domain
        self._buckets: list[StaticIndex | None] = []
        self._n = 0
        self._merge_moves = 0

    def __len__(self) -> int:
        return self._n

    @property
    def buckets(self) -> tuple[StaticIndex | None, ...]:
        return tuple(self._buckets)

    @property
    def merge_moves(self) -> int:
        """Total elements moved by carry merges since construction."""
        return self._merge_moves

    def occupancy(self) -> int:
        """Bitmask of occupied buckets; always equals the binary form of len."""
        return sum(1 << i for i, b in enumerate(self._buckets) if b is not None)

    def insert(self, p: Sequence[int]) -> None:
        self.domain.require_point(p)
        coords = np.array([[int(c) for c in p]], dtype=np.int64)
        code = encode(p, self.domain, self.curve)
        if self.domain.code_bits <= 64:
            codes = np.array([code], dtype=np.uint64)
        else:
            codes = np.empty(1, dtype=object)
            codes[0] = code
        carry = StaticIndex._from_sorted(coords, codes, self.curve, self.domain)
        i = 0
        while i < len(self._buckets) and self._buckets[i] is not None:
            carry = self._merge(self._buckets[i], carry)
            self._buckets[i] = None
            i += 1
        if i == len(self._buckets):
            self._buckets.append(carry)
        else:
            self._buckets[i] = carry
        self._n += 1

    def _merge(self, old: StaticIndex, new: StaticIndex) -> StaticIndex:
        """Linear merge of two sorted buckets; the older one wins ties."""
        oc, nc = old.codes, new.codes
        out_codes = np.empty(len(oc) + len(nc), dtype=oc.dtype)
        pos_old = np.arange(len(oc)) + np.searchsorted(nc, oc, side="left")
        pos_new = np.arange(len(nc)) + np.searchsorted(oc, nc, side="right")
        out_codes[pos_old] = oc
        out_codes[pos_new] = nc
        out_coords = np.empty((len(oc) + len(nc), self.domain.d), dtype=np.int64)
        out_coords[pos_old] = old.coords
        out_coords[pos_new] = new.coords
        self._merge_moves += len(oc) + len(nc)
        return StaticIndex._from_sorted(out_coords, out_codes, self.curve, self.domain)

    def query(self, q: Sequence[int], r: int, metric: str = "linf") -> list[tuple[int, ...]]:
        """Union of the static queries over all occupied buckets."""
        out: list[tuple[int, ...]] = []
        for bucket in self._buckets:
            if bucket is not None:
                out.extend(bucket.query(q, r, metric))
        return out

    def count(self, q: Sequence[int], r: int, metric: str = "linf") -> int:
        return sum(
            b.count(q, r, metric) for b in self._buckets if b is not None
        )
