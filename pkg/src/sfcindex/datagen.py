"""Seeded synthetic point sets and query streams.

All randomness derives from the raw Philox 4x64 counter stream, with the
distributions built in-package (masked uniforms, Box-Muller normals,
inversion geometrics).  That keeps outputs a pure function of the generator
arguments, independent of any library's distribution-method evolution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .encoding import Domain
from .errors import ConfigurationError, UnsupportedDimensionError

PRNG_ALGORITHM = "philox4x64"

DISTRIBUTIONS = ("uniform", "gaussian", "skewed", "clustered")

# Skewed generator: geometric success parameter, mean y is ~extent/16.
GEOMETRIC_MEAN_DIVISOR = 16

# Clustered generator: gaussian offset sigma is extent/100.
CLUSTER_SIGMA_DIVISOR = 100


@dataclass(frozen=True)
class DatasetSpec:
    distribution: str
    n: int
    domain: Domain
    seed: int

    def __post_init__(self):
        if self.distribution not in DISTRIBUTIONS:
            raise ConfigurationError(
                f"unknown distribution {self.distribution!r}, expected one of {DISTRIBUTIONS}"
            )
        if self.n < 1:
            raise ConfigurationError(f"n must be >= 1, got {self.n}")


@dataclass(frozen=True)
class QuerySpec:
    centre_distribution: str
    rho: float
    count: int
    domain: Domain
    seed: int

    def __post_init__(self):
        if self.centre_distribution not in DISTRIBUTIONS:
            raise ConfigurationError(
                f"unknown distribution {self.centre_distribution!r}, expected one of {DISTRIBUTIONS}"
            )
        if not 0 < self.rho <= 1:
            raise ConfigurationError(f"rho must be in (0, 1], got {self.rho}")
        if self.count < 1:
            raise ConfigurationError(f"count must be >= 1, got {self.count}")


class _Stream:
    """Raw uint64 words from a Philox 4x64 counter-based generator."""

    def __init__(self, seed: int):
        self._bg = np.random.Philox(key=seed & ((1 << 64) - 1))

    def words(self, n: int) -> np.ndarray:
        return self._bg.random_raw(n)

    def unit(self, n: int) -> np.ndarray:
        """Doubles in [0, 1), 53 significant bits."""
        return (self.words(n) >> np.uint64(11)) * 2.0**-53

    def normals(self, n: int) -> np.ndarray:
        """Standard normals via Box-Muller; consumes 2 words per pair."""
        m = (n + 1) // 2
        u1 = ((self.words(m) >> np.uint64(11)) + np.uint64(1)) * 2.0**-53  # (0, 1]
        u2 = self.unit(m)
        radius = np.sqrt(-2.0 * np.log(u1))
        theta = 2.0 * math.pi * u2
        return np.concatenate([radius * np.cos(theta), radius * np.sin(theta)])[:n]

    def uniform_coords(self, n: int, omega: int) -> np.ndarray:
        """Unbiased integers in [0, 2**omega): masked low bits of raw words."""
        return (self.words(n) & np.uint64((1 << omega) - 1)).astype(np.int64)

    def geometric(self, n: int, p: float) -> np.ndarray:
        """Failures-before-success counts, by inversion of the CDF."""
        u = self.unit(n)
        return np.floor(np.log1p(-u) / math.log1p(-p)).astype(np.int64)


def gen_points(spec: DatasetSpec) -> np.ndarray:
    """Exactly n in-domain points as an (n, 2) int64 array.

    Deterministic per spec: identical specs yield bit-identical arrays.
    """
    dom = spec.domain
    if dom.d != 2:
        raise UnsupportedDimensionError("synthetic generators are two-dimensional")
    stream = _Stream(spec.seed)
    return _SAMPLERS[spec.distribution](stream, spec.n, dom)


def query_radius(rho: float, dom: Domain) -> int:
    """Half the relative query diameter, floored to grid units."""
    return math.floor(rho * dom.extent) // 2


def gen_queries(spec: QuerySpec) -> list[tuple[tuple[int, int], int]]:
    """(centre, radius) pairs; centres follow the named distribution."""
    dom = spec.domain
    stream = _Stream(spec.seed)
    centres = _SAMPLERS[spec.centre_distribution](stream, spec.count, dom)
    r = query_radius(spec.rho, dom)
    return [((int(x), int(y)), r) for x, y in centres]


def _uniform(stream: _Stream, n: int, dom: Domain) -> np.ndarray:
    out = np.empty((n, 2), dtype=np.int64)
    out[:, 0] = stream.uniform_coords(n, dom.omega)
    out[:, 1] = stream.uniform_coords(n, dom.omega)
    return out


def _gaussian_column(stream: _Stream, n: int, mu: float, sigma: float, extent: int) -> np.ndarray:
    """Rounded normal draws, redrawn (not clamped) while outside [0, extent)."""
    col = np.rint(mu + sigma * stream.normals(n)).astype(np.int64)
    bad = np.flatnonzero((col < 0) | (col >= extent))
    while bad.size:
        col[bad] = np.rint(mu + sigma * stream.normals(bad.size)).astype(np.int64)
        bad = bad[(col[bad] < 0) | (col[bad] >= extent)]
    return col


def _gaussian(stream: _Stream, n: int, dom: Domain) -> np.ndarray:
    mu = dom.extent / 2
    sigma = dom.extent / 8
    out = np.empty((n, 2), dtype=np.int64)
    out[:, 0] = _gaussian_column(stream, n, mu, sigma, dom.extent)
    out[:, 1] = _gaussian_column(stream, n, mu, sigma, dom.extent)
    return out


def _skewed(stream: _Stream, n: int, dom: Domain) -> np.ndarray:
    out = np.empty((n, 2), dtype=np.int64)
    out[:, 0] = stream.uniform_coords(n, dom.omega)
    p = GEOMETRIC_MEAN_DIVISOR / dom.extent
    out[:, 1] = np.minimum(stream.geometric(n, p), dom.extent - 1)
    return out


def _clustered(stream: _Stream, n: int, dom: Domain) -> np.ndarray:
    """isqrt(n) uniform centres, gaussian spread around each, grouped output.

    Leftover points (n not a perfect square) round-robin over the first
    centres.
    """
    c = math.isqrt(n)
    centres = _uniform(stream, c, dom)
    counts = np.full(c, c, dtype=np.int64)
    for j in range(n - c * c):
        counts[j % c] += 1
    base = np.repeat(centres, counts, axis=0)
    sigma = dom.extent / CLUSTER_SIGMA_DIVISOR
    out = np.empty((n, 2), dtype=np.int64)
    for axis in range(2):
        col = base[:, axis] + np.rint(sigma * stream.normals(n)).astype(np.int64)
        bad = np.flatnonzero((col < 0) | (col >= dom.extent))
        while bad.size:
            col[bad] = base[bad, axis] + np.rint(sigma * stream.normals(bad.size)).astype(np.int64)
            bad = bad[(col[bad] < 0) | (col[bad] >= dom.extent)]
        out[:, axis] = col
    return out


_SAMPLERS = {
    "uniform": _uniform,
    "gaussian": _gaussian,
    "skewed": _skewed,
    "clustered": _clustered,
}
