"""Z-order and Hilbert codecs between grid points and fixed-width curve codes.

Both curves order the grid [0, 2**omega)**d so that every quadtree cell
occupies one contiguous code interval: points sharing a level-l cell share
their first d*(omega - l) code bits.  Codes compare as plain integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .errors import DomainViolationError, UnsupportedDimensionError

Point = tuple[int, ...]

CURVES = ("z", "hilbert")

# 8-bit chunk of _spread2, i.e. bit i of v moved to bit 2i.
_SPREAD2_TABLE = [
    sum(((v >> i) & 1) << (2 * i) for i in range(8)) for v in range(256)
]

_SPREAD2_MASKS = (
    (16, 0x0000FFFF0000FFFF),
    (8, 0x00FF00FF00FF00FF),
    (4, 0x0F0F0F0F0F0F0F0F),
    (2, 0x3333333333333333),
    (1, 0x5555555555555555),
)


@dataclass(frozen=True)
class Domain:
    """The integer grid [0, 2**omega)**d."""

    omega: int
    d: int = 2

    def __post_init__(self):
        if not 1 <= self.omega <= 32:
            raise DomainViolationError(f"omega must be in [1, 32], got {self.omega}")
        if not 2 <= self.d <= 4:
            raise UnsupportedDimensionError(f"dimension must be in [2, 4], got {self.d}")
        if self.d * self.omega > 128:
            raise DomainViolationError(
                f"code width d*omega = {self.d * self.omega} exceeds 128 bits"
            )

    @property
    def extent(self) -> int:
        return 1 << self.omega

    @property
    def code_bits(self) -> int:
        return self.d * self.omega

    def contains(self, p: Sequence[int]) -> bool:
        return len(p) == self.d and all(0 <= c < self.extent for c in p)

    def require_point(self, p: Sequence[int]) -> None:
        if len(p) != self.d:
            raise DomainViolationError(f"point {tuple(p)} has {len(p)} coords, domain has d={self.d}")
        for c in p:
            if not 0 <= c < self.extent:
                raise DomainViolationError(
                    f"coordinate {c} outside [0, {self.extent}) for omega={self.omega}"
                )

    def require_code(self, code: int) -> None:
        if not 0 <= code < (1 << self.code_bits):
            raise DomainViolationError(
                f"code {code} outside [0, 2**{self.code_bits})"
            )


@dataclass(frozen=True)
class Cell:
    """A quadtree hypercube: side 2**level, anchor at a multiple of 2**level."""

    level: int
    anchor: Point

    def side(self) -> int:
        return 1 << self.level

    def validate(self, dom: Domain) -> None:
        if not 0 <= self.level <= dom.omega:
            raise DomainViolationError(f"cell level {self.level} outside [0, {dom.omega}]")
        s = self.side()
        if len(self.anchor) != dom.d:
            raise DomainViolationError("cell anchor dimension mismatch")
        for a in self.anchor:
            if a % s != 0 or not 0 <= a or a + s > dom.extent:
                raise DomainViolationError(f"cell anchor {self.anchor} invalid at level {self.level}")


class CodeRange(NamedTuple):
    """Inclusive code interval [lo, hi] owned by one quadtree cell."""

    lo: int
    hi: int


def morton_encode(p: Sequence[int], dom: Domain) -> int:
    """Bit-interleave coordinates, axis 0 most significant within each group."""
    dom.require_point(p)
    if dom.d == 2:
        return (_spread2(p[0]) << 1) | _spread2(p[1])
    code = 0
    for i in range(dom.omega - 1, -1, -1):
        for c in p:
            code = (code << 1) | ((c >> i) & 1)
    return code


def morton_decode(code: int, dom: Domain) -> Point:
    """Inverse of morton_encode."""
    dom.require_code(code)
    coords = [0] * dom.d
    pos = dom.code_bits
    for i in range(dom.omega - 1, -1, -1):
        for a in range(dom.d):
            pos -= 1
            coords[a] |= ((code >> pos) & 1) << i
    return tuple(coords)


def _spread2(v: int) -> int:
    t = _SPREAD2_TABLE
    return (
        t[v & 255]
        | (t[(v >> 8) & 255] << 16)
        | (t[(v >> 16) & 255] << 32)
        | (t[(v >> 24) & 255] << 48)
    )


def hilbert_encode(p: Sequence[int], dom: Domain) -> int:
    """Rank of a point along the Hilbert curve (d = 2 only).

    Order-1 visit order is (0,0), (0,1), (1,1), (1,0); deeper orders follow
    the usual rotate-and-reflect recursion.
    """
    if dom.d != 2:
        raise UnsupportedDimensionError("hilbert curve is implemented for d = 2 only")
    dom.require_point(p)
    x, y = p
    code = 0
    for i in range(dom.omega - 1, -1, -1):
        s = 1 << i
        rx = 1 if x & s else 0
        ry = 1 if y & s else 0
        code += s * s * ((3 * rx) ^ ry)
        # restrict to the chosen subsquare, then rotate/reflect into place
        x &= s - 1
        y &= s - 1
        if ry == 0:
            if rx == 1:
                x = (s - 1) - x
                y = (s - 1) - y
            x, y = y, x
    return code


def hilbert_decode(code: int, dom: Domain) -> Point:
    """Inverse of hilbert_encode."""
    if dom.d != 2:
        raise UnsupportedDimensionError("hilbert curve is implemented for d = 2 only")
    dom.require_code(code)
    x = y = 0
    t = code
    for i in range(dom.omega):
        s = 1 << i
        rx = 1 & (t >> 1)
        ry = 1 & (t ^ rx)
        if ry == 0:
            if rx == 1:
                x = s - 1 - x
                y = s - 1 - y
            x, y = y, x
        x += s * rx
        y += s * ry
        t >>= 2
    return (x, y)


def encode(p: Sequence[int], dom: Domain, curve: str) -> int:
    if curve == "z":
        return morton_encode(p, dom)
    if curve == "hilbert":
        return hilbert_encode(p, dom)
    raise ValueError(f"unknown curve {curve!r}, expected one of {CURVES}")


def decode(code: int, dom: Domain, curve: str) -> Point:
    if curve == "z":
        return morton_decode(code, dom)
    if curve == "hilbert":
        return hilbert_decode(code, dom)
    raise ValueError(f"unknown curve {curve!r}, expected one of {CURVES}")


def encode_many(coords: np.ndarray, dom: Domain, curve: str) -> np.ndarray:
    """Vectorised encode of an (n, d) coordinate array.

    Returns uint64 when the code fits 64 bits, otherwise an object array of
    Python ints.  Bit-identical to the scalar encoders.
    """
    coords = np.asarray(coords)
    if coords.ndim != 2 or coords.shape[1] != dom.d:
        raise DomainViolationError(f"expected an (n, {dom.d}) array, got shape {coords.shape}")
    if coords.size and (coords.min() < 0 or coords.max() >= dom.extent):
        raise DomainViolationError(
            f"coordinates outside [0, {dom.extent}) for omega={dom.omega}"
        )
    if curve == "hilbert":
        if dom.d != 2:
            raise UnsupportedDimensionError("hilbert curve is implemented for d = 2 only")
        return _hilbert_many(coords[:, 0], coords[:, 1], dom.omega)
    if curve != "z":
        raise ValueError(f"unknown curve {curve!r}, expected one of {CURVES}")
    if dom.d == 2:
        return _morton2_many(coords[:, 0], coords[:, 1])
    if dom.code_bits <= 64:
        return _morton_many_small(coords, dom)
    out = np.empty(len(coords), dtype=object)
    for i, row in enumerate(coords):
        out[i] = morton_encode(tuple(int(c) for c in row), dom)
    return out


def _morton2_many(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    def spread(v):
        v = v.astype(np.uint64)
        for shift, mask in _SPREAD2_MASKS:
            v = (v | (v << np.uint64(shift))) & np.uint64(mask)
        return v

    return (spread(x) << np.uint64(1)) | spread(y)


def _morton_many_small(coords: np.ndarray, dom: Domain) -> np.ndarray:
    code = np.zeros(len(coords), dtype=np.uint64)
    cols = [coords[:, a].astype(np.uint64) for a in range(dom.d)]
    for i in range(dom.omega - 1, -1, -1):
        for col in cols:
            code = (code << np.uint64(1)) | ((col >> np.uint64(i)) & np.uint64(1))
    return code


def _hilbert_many(x: np.ndarray, y: np.ndarray, omega: int) -> np.ndarray:
    x = x.astype(np.uint64)
    y = y.astype(np.uint64)
    code = np.zeros(len(x), dtype=np.uint64)
    one = np.uint64(1)
    for i in range(omega - 1, -1, -1):
        s = 1 << i
        rx = (x >> np.uint64(i)) & one
        ry = (y >> np.uint64(i)) & one
        code += np.uint64(s * s) * ((np.uint64(3) * rx) ^ ry)
        x &= np.uint64(s - 1)
        y &= np.uint64(s - 1)
        swap = ry == 0
        flip = swap & (rx == 1)
        xf = np.where(flip, np.uint64(s - 1) - x, x)
        yf = np.where(flip, np.uint64(s - 1) - y, y)
        x = np.where(swap, yf, xf)
        y = np.where(swap, xf, yf)
    return code


def cell_code_range(cell: Cell, dom: Domain, curve: str) -> CodeRange:
    """Inclusive code interval covered by a quadtree cell.

    All points of the cell share the cell's code prefix, so encoding the
    anchor and padding the d*level free bits with zeros/ones bounds it.
    """
    cell.validate(dom)
    shift = dom.d * cell.level
    prefix = encode(cell.anchor, dom, curve) >> shift << shift
    return CodeRange(prefix, prefix | ((1 << shift) - 1))


def children(cell: Cell, dom: Domain) -> Iterator[Cell]:
    """The 2**d subcells one level below (empty for level-0 cells)."""
    if cell.level == 0:
        return
    half = 1 << (cell.level - 1)
    for offs in product((0, half), repeat=dom.d):
        anchor = tuple(a + o for a, o in zip(cell.anchor, offs))
        yield Cell(cell.level - 1, anchor)
