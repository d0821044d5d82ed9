"""Measure of the Ellsberg-behaviour region in parameter space.

Two estimators:

* midpoint-rule grid quadrature of the region indicator over ``[0,1]^2`` at
  fixed ``d`` or over ``[0,1]^2 x [0,pi]``; hits are counted as integers per
  x-slab so any partition of the work gives the identical ratio;
* hit-or-miss Monte Carlo with a counter-based generator (Philox) keyed by
  the seed; block ``k`` always draws from the same counter range, so results
  do not depend on how blocks are scheduled.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .ellsberg import D_MAX, _check_phase, ellsberg_mask
from .errors import DomainError

Predicate = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]

GRID = "GRID"
MONTE_CARLO = "MONTE_CARLO"
MC_GENERATOR = f"numpy.random.Philox (numpy {np.__version__})"
MC_BLOCK = 1 << 16

DEFAULT_N_2D = 1000
DEFAULT_N_3D = 300


@dataclass(frozen=True)
class GridSpec:
    points_per_axis: int = DEFAULT_N_2D
    rule: str = "midpoint"

    def __post_init__(self):
        if int(self.points_per_axis) != self.points_per_axis or self.points_per_axis < 2:
            raise DomainError(f"points_per_axis must be an integer >= 2, got {self.points_per_axis!r}")
        if self.rule != "midpoint":
            raise DomainError(f"unsupported rule {self.rule!r}")

    def halved(self) -> "GridSpec | None":
        half = self.points_per_axis // 2
        return GridSpec(half) if half >= 2 else None


@dataclass(frozen=True)
class RegionEstimate:
    ratio: float
    error_estimate: float
    method: str
    evaluations: int
    seed: int | None = None
    hits: int = 0
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not 0.0 <= self.ratio <= 1.0:
            raise ValueError(f"ratio {self.ratio!r} outside [0, 1]")
        if self.method == MONTE_CARLO and self.seed is None:
            raise ValueError("Monte Carlo estimates must carry their seed")


def midpoints(n: int, length: float = 1.0) -> np.ndarray:
    return (np.arange(n, dtype=np.float64) + 0.5) * (length / n)


def _default_predicate(u0: float, u100: float) -> Predicate:
    def pred(x, y, d):
        return ellsberg_mask(x, y, d, u0, u100)

    return pred


def _count_hits(pred: Predicate, xs: np.ndarray, ys: np.ndarray, ds: np.ndarray, workers: int) -> int:
    """Integer hit count over the tensor grid xs x ys x ds, split into x-slabs."""
    y = ys[:, None]
    d = ds[None, :]

    def slab(x: float) -> int:
        return int(np.count_nonzero(np.broadcast_to(pred(np.float64(x), y, d), (ys.size, ds.size))))

    if workers <= 1:
        counts = [slab(x) for x in xs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(slab, xs))
    return sum(counts)


def _grid_ratio(pred, xs, ys, ds, workers) -> tuple[int, int]:
    hits = _count_hits(pred, xs, ys, ds, workers)
    return hits, xs.size * ys.size * ds.size


def _grid_estimate(build_axes, grid: GridSpec, pred: Predicate, workers: int, meta: dict) -> RegionEstimate:
    hits, total = _grid_ratio(pred, *build_axes(grid.points_per_axis), workers)
    ratio = hits / total
    coarse = grid.halved()
    if coarse is None:
        err = 1.0
    else:
        c_hits, c_total = _grid_ratio(pred, *build_axes(coarse.points_per_axis), workers)
        err = abs(ratio - c_hits / c_total)
    return RegionEstimate(ratio, err, GRID, total, hits=hits, meta={"n": grid.points_per_axis, **meta})


def _x_axis(n: int, discrete_urn: int | None) -> np.ndarray:
    if discrete_urn is None:
        return midpoints(n)
    if discrete_urn < 1:
        raise DomainError(f"discrete urn needs at least one ball, got {discrete_urn}")
    return np.sqrt(np.arange(discrete_urn + 1, dtype=np.float64) / discrete_urn)


def area_ratio_fixed_d(
    d: float,
    grid: GridSpec = GridSpec(DEFAULT_N_2D),
    *,
    u0: float = 0.0,
    u100: float = 1.0,
    predicate: Predicate | None = None,
    discrete_urn: int | None = None,
    workers: int = 1,
) -> RegionEstimate:
    """Fraction of the unit (x, y) square showing Ellsberg behaviour at phase ``d``.

    Cell centres of an n x n midpoint grid are tested. With ``discrete_urn=N``
    the x axis is replaced by the N+1 compositions sqrt(k/N), each weighted
    equally. The error estimate is the change against the n/2 grid.
    """
    d = _check_phase(d)
    pred = predicate or _default_predicate(u0, u100)

    def axes(n):
        return _x_axis(n, discrete_urn), midpoints(n), np.array([d])

    return _grid_estimate(axes, grid, pred, workers, {"d": d})


def volume_ratio(
    grid: GridSpec = GridSpec(DEFAULT_N_3D),
    *,
    u0: float = 0.0,
    u100: float = 1.0,
    predicate: Predicate | None = None,
    discrete_urn: int | None = None,
    workers: int = 1,
) -> RegionEstimate:
    """Fraction of the box [0,1] x [0,1] x [0,pi] showing Ellsberg behaviour.

    ``d`` carries the uniform measure on [0, pi].
    """
    pred = predicate or _default_predicate(u0, u100)

    def axes(n):
        return _x_axis(n, discrete_urn), midpoints(n), midpoints(n, D_MAX)

    return _grid_estimate(axes, grid, pred, workers, {})


def volume_slices(
    grid: GridSpec = GridSpec(DEFAULT_N_3D),
    *,
    u0: float = 0.0,
    u100: float = 1.0,
    discrete_urn: int | None = None,
) -> list[tuple[float, float]]:
    """Area ratio on each d midpoint of the 3-D grid, as (d, ratio) pairs."""
    n = grid.points_per_axis
    xs = _x_axis(n, discrete_urn)
    ys = midpoints(n)
    pred = _default_predicate(u0, u100)
    out = []
    for d in midpoints(n, D_MAX):
        hits = _count_hits(pred, xs, ys, np.array([d]), 1)
        out.append((float(d), hits / (xs.size * ys.size)))
    return out


def sweep_d(
    d_values: Sequence[float],
    grid: GridSpec = GridSpec(DEFAULT_N_2D),
    **kwargs,
) -> list[tuple[float, RegionEstimate]]:
    checked = [_check_phase(d) for d in d_values]
    return [(d, area_ratio_fixed_d(d, grid, **kwargs)) for d in checked]


def _block_uniforms(seed: int, block: int, size: int, dim: int) -> np.ndarray:
    # Philox emits four 64-bit words per counter step, one word per double.
    steps_per_block = math.ceil(MC_BLOCK * dim / 4)
    bitgen = np.random.Philox(key=seed)
    bitgen.advance(block * steps_per_block)
    return np.random.Generator(bitgen).random((dim, size))


def monte_carlo_ratio(
    samples: int,
    seed: int,
    d: float | None = None,
    *,
    u0: float = 0.0,
    u100: float = 1.0,
    predicate: Predicate | None = None,
    workers: int = 1,
) -> RegionEstimate:
    """Hit-or-miss estimate of the region measure.

    With ``d`` given, samples (x, y) uniformly on the unit square at that
    phase; otherwise samples (x, y, d) uniformly on [0,1]^2 x [0,pi]. The
    error estimate is the binomial standard error sqrt(p(1-p)/samples).
    """
    if samples < 1000:
        raise DomainError(f"need at least 1000 samples, got {samples}")
    if not 0 <= seed < 2**64:
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed}")
    if d is not None:
        d = _check_phase(d)
    dim = 2 if d is not None else 3
    pred = predicate or _default_predicate(u0, u100)
    n_blocks = -(-samples // MC_BLOCK)

    def block_hits(k: int) -> int:
        size = min(MC_BLOCK, samples - k * MC_BLOCK)
        u = _block_uniforms(seed, k, size, dim)
        dd = np.full(size, d) if d is not None else u[2] * D_MAX
        return int(np.count_nonzero(np.broadcast_to(pred(u[0], u[1], dd), (size,))))

    if workers <= 1:
        hits = sum(block_hits(k) for k in range(n_blocks))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            hits = sum(pool.map(block_hits, range(n_blocks)))
    p = hits / samples
    meta = {"generator": MC_GENERATOR, "block": MC_BLOCK}
    if d is not None:
        meta["d"] = d
    return RegionEstimate(p, math.sqrt(p * (1.0 - p) / samples), MONTE_CARLO, samples, seed=seed, hits=hits, meta=meta)
