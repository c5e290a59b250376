"""Design grids and seeded simulation of the model Y_i = f(X_i) * U_i.

Random streams come from numpy's counter-based Philox generator keyed by a
SeedSequence. A replication stream is addressed by (master_seed, rep_index),
so a replication's sample never depends on which worker ran it or in which
order replications were scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import TYPE_CHECKING, Literal

import numpy as np

from mulreg.errors import InputError, NonCubicSampleSize

if TYPE_CHECKING:
    from mulreg.functions import FunctionSpec


RNG_NAME = "numpy.random.Philox+SeedSequence"
RNG_VERSION = 1

NoiseMode = Literal["uniform", "none"]


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """Generator for ``seed`` on the sub-stream addressed by ``stream``."""
    seq = np.random.SeedSequence(seed, spawn_key=tuple(stream))
    return np.random.Generator(np.random.Philox(seq))


def integer_root(n: int, d: int) -> int:
    """Return m with m**d == n and m >= 2, else raise NonCubicSampleSize."""
    if n < 2 or d < 1:
        raise NonCubicSampleSize(f"n={n}, d={d}: need n >= 2 and d >= 1")
    guess = round(n ** (1.0 / d))
    for m in (guess - 1, guess, guess + 1):
        if m >= 2 and m**d == n:
            return m
    raise NonCubicSampleSize(f"n={n} has no integer {d}-th root >= 2")


@dataclass(frozen=True, eq=False)
class DesignGrid:
    """Tensor grid {1/m, ..., 1}^d in lexicographic order (first axis slowest)."""

    d: int
    n: int
    m: int
    points: np.ndarray = field(repr=False)

    def axis_index(self, coords: np.ndarray) -> np.ndarray:
        """Integer node index k (1..m) of each coordinate, i.e. coords * m."""
        return np.rint(coords * self.m).astype(np.int64)


@lru_cache(maxsize=64)
def make_grid(d: int, n: int) -> DesignGrid:
    m = integer_root(n, d)
    axis = np.arange(1, m + 1, dtype=np.float64) / m
    mesh = np.meshgrid(*([axis] * d), indexing="ij")
    points = np.stack([g.reshape(-1) for g in mesh], axis=1)
    points.setflags(write=False)
    return DesignGrid(d=d, n=n, m=m, points=points)


@dataclass(frozen=True, eq=False)
class Sample:
    """One realization (X_i, Y_i), i = 1..n, with its provenance."""

    grid: DesignGrid
    y_values: np.ndarray = field(repr=False)
    seed: int
    function_id: str
    stream: tuple[int, ...] = ()
    noise: NoiseMode = "uniform"

    @property
    def n(self) -> int:
        return self.grid.n

    @property
    def d(self) -> int:
        return self.grid.d

    @property
    def x(self) -> np.ndarray:
        return self.grid.points


def simulate(
    f: FunctionSpec,
    grid: DesignGrid,
    seed: int,
    *stream: int,
    noise: NoiseMode = "uniform",
) -> Sample:
    """Draw Y_i = f(X_i) * U_i with U_i i.i.d. uniform on [0, 1].

    ``noise="none"`` sets U_i = 1, which makes every observation sit on the
    frontier; it exists to debug estimators against an exact fit.
    """
    fx = np.asarray(f(grid.points), dtype=np.float64)
    if fx.shape != (grid.n,) or not np.all(np.isfinite(fx)):
        raise InputError(f"function {f.id} is not finite on the design grid")
    if np.any(fx < 0.0):
        raise InputError(f"function {f.id} is negative on the design grid")

    if noise == "uniform":
        u = make_rng(seed, *stream).random(grid.n)
    else:
        u = np.ones(grid.n)
    y = fx * u
    y.setflags(write=False)
    return Sample(
        grid=grid,
        y_values=y,
        seed=seed,
        function_id=f.id,
        stream=tuple(stream),
        noise=noise,
    )
