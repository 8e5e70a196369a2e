"""File formats: point sets, query streams, and benchmark result CSVs.

Text points:   `# omega=<w> d=<d>` header, then one `x,y` line per point.
Binary points: 8-byte magic, u32 omega, u32 d, u64 count, then little-endian
               u32 coordinates in point-major order.
Text queries:  same header, then `x,y,r` lines.
Readers reject out-of-domain values; a `one_based` flag shifts external
1-based data by -1 at ingestion.
"""

from __future__ import annotations

import csv
import os
import struct
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .encoding import Domain
from .errors import DomainViolationError, ParseError

POINTS_MAGIC = b"SFCPTBIN"
_BIN_HEADER = struct.Struct("<IIQ")

RESULTS_HEADER = [
    "structure", "dataset", "n", "curve", "rho", "metric",
    "phase", "ms", "queries", "run", "is_median",
]


@dataclass
class ResultRecord:
    """One timed phase of one benchmark run."""

    structure: str
    dataset: str
    n: int
    curve: str
    rho: float
    metric: str
    phase: str  # build | insert | query | replay
    ms: float
    queries: int
    run: int  # -1 marks the median record
    is_median: bool

    def __post_init__(self):
        if self.ms < 0:
            raise ValueError(f"elapsed ms must be >= 0, got {self.ms}")
        if self.phase == "query" and self.queries < 1:
            raise ValueError("query records must report at least one query")

    def row(self) -> list:
        return [
            self.structure, self.dataset, self.n, self.curve, self.rho,
            self.metric, self.phase, repr(self.ms), self.queries, self.run,
            int(self.is_median),
        ]


def write_results(path: str, records: Iterable[ResultRecord]) -> None:
    """Append records as CSV, writing the fixed header only on a fresh file."""
    fresh = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        if fresh:
            writer.writerow(RESULTS_HEADER)
        for rec in records:
            writer.writerow(rec.row())


def _parse_header(line: str, path: str, lineno: int) -> Domain:
    parts = line.strip().split()
    if (
        len(parts) == 3
        and parts[0] == "#"
        and parts[1].startswith("omega=")
        and parts[2].startswith("d=")
    ):
        try:
            return Domain(int(parts[1][6:]), int(parts[2][2:]))
        except ValueError:
            pass
    raise ParseError(f"{path}:{lineno}: expected header '# omega=<w> d=<d>', got {line!r}")


def _parse_ints(fields: Sequence[str], path: str, lineno: int) -> list[int]:
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise ParseError(f"{path}:{lineno}: expected integers, got {fields!r}") from None


def _shift_one_based(values: np.ndarray, one_based: bool) -> np.ndarray:
    return values - 1 if one_based else values


def read_points(path: str, one_based: bool = False) -> tuple[Domain, np.ndarray]:
    """Read a point file (text or binary, sniffed by magic)."""
    with open(path, "rb") as f:
        if f.read(len(POINTS_MAGIC)) == POINTS_MAGIC:
            return _read_points_binary(f, path, one_based)
    return _read_points_text(path, one_based)


def _read_points_text(path: str, one_based: bool) -> tuple[Domain, np.ndarray]:
    rows = []
    with open(path, "r") as f:
        first = f.readline()
        if not first:
            raise ParseError(f"{path}:1: empty file, expected a header line")
        dom = _parse_header(first, path, 1)
        for lineno, line in enumerate(f, start=2):
            line = line.strip()
            if not line:
                continue
            fields = line.split(",")
            if len(fields) != dom.d:
                raise ParseError(f"{path}:{lineno}: expected {dom.d} coordinates, got {line!r}")
            coords = _parse_ints(fields, path, lineno)
            if one_based:
                coords = [c - 1 for c in coords]
            for c in coords:
                if not 0 <= c < dom.extent:
                    raise DomainViolationError(
                        f"{path}:{lineno}: coordinate {c} outside [0, {dom.extent})"
                    )
            rows.append(coords)
    arr = np.array(rows, dtype=np.int64).reshape(len(rows), dom.d)
    return dom, arr


def _read_points_binary(f, path: str, one_based: bool) -> tuple[Domain, np.ndarray]:
    header = f.read(_BIN_HEADER.size)
    if len(header) != _BIN_HEADER.size:
        raise ParseError(f"{path}: truncated binary header")
    omega, d, count = _BIN_HEADER.unpack(header)
    dom = Domain(omega, d)
    raw = f.read(4 * d * count)
    if len(raw) != 4 * d * count:
        raise ParseError(f"{path}: truncated binary payload, expected {count} points")
    arr = np.frombuffer(raw, dtype="<u4").astype(np.int64).reshape(count, d)
    arr = _shift_one_based(arr, one_based)
    bad = (arr < 0) | (arr >= dom.extent)
    if bad.any():
        i = int(np.argwhere(bad.any(axis=1))[0][0])
        raise DomainViolationError(
            f"{path}: point {i} outside [0, {dom.extent}) after ingestion"
        )
    return dom, arr


def write_points(
    path: str,
    domain: Domain,
    points: Sequence[Sequence[int]] | np.ndarray,
    binary: bool = False,
) -> None:
    arr = np.asarray(points, dtype=np.int64).reshape(-1, domain.d)
    if arr.size and ((arr < 0) | (arr >= domain.extent)).any():
        raise DomainViolationError("refusing to write out-of-domain points")
    if binary:
        with open(path, "wb") as f:
            f.write(POINTS_MAGIC)
            f.write(_BIN_HEADER.pack(domain.omega, domain.d, len(arr)))
            f.write(arr.astype("<u4").tobytes())
        return
    with open(path, "w") as f:
        f.write(f"# omega={domain.omega} d={domain.d}\n")
        for row in arr:
            f.write(",".join(str(int(c)) for c in row) + "\n")


def read_queries(path: str, one_based: bool = False) -> list[tuple[tuple[int, ...], int]]:
    """Read `x,y,r` query lines under the standard header."""
    out = []
    with open(path, "r") as f:
        first = f.readline()
        if not first:
            raise ParseError(f"{path}:1: empty file, expected a header line")
        dom = _parse_header(first, path, 1)
        for lineno, line in enumerate(f, start=2):
            line = line.strip()
            if not line:
                continue
            fields = line.split(",")
            if len(fields) != dom.d + 1:
                raise ParseError(
                    f"{path}:{lineno}: expected {dom.d} coordinates and a radius, got {line!r}"
                )
            values = _parse_ints(fields, path, lineno)
            centre, r = values[:-1], values[-1]
            if one_based:
                centre = [c - 1 for c in centre]
            if r < 0:
                raise ParseError(f"{path}:{lineno}: negative radius {r}")
            for c in centre:
                if not 0 <= c < dom.extent:
                    raise DomainViolationError(
                        f"{path}:{lineno}: coordinate {c} outside [0, {dom.extent})"
                    )
            out.append((tuple(centre), r))
    return out


def write_queries(
    path: str, domain: Domain, queries: Sequence[tuple[Sequence[int], int]]
) -> None:
    with open(path, "w") as f:
        f.write(f"# omega={domain.omega} d={domain.d}\n")
        for centre, r in queries:
            domain.require_point(centre)
            if r < 0:
                raise ValueError(f"negative radius {r}")
            f.write(",".join(str(int(c)) for c in centre) + f",{int(r)}\n")
