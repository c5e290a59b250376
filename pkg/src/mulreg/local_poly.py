"""Local polynomial machinery around an evaluation point y.

Multi-index bookkeeping, the basis K(z) = (z^p : |p| <= b), window
extraction V_h(y), the normalized moment matrix with its smallest
eigenvalue, and the local least squares fit used to estimate A(f), M(f).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np
import structlog
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from mulreg.errors import (
    EmptyWindow,
    InputError,
    NonPositiveAhat,
    SingularDesign,
    WindowOutOfDomain,
)
from mulreg.model import Sample

logger = structlog.get_logger()

SINGULAR_TOL = 1e-12
_EDGE_TOL = 1e-12
_SNAP_TOL = 1e-9


def _compositions(total: int, d: int) -> list[tuple[int, ...]]:
    if d == 1:
        return [(total,)]
    out: list[tuple[int, ...]] = []
    for first in range(total, -1, -1):
        out.extend((first, *rest) for rest in _compositions(total - first, d - 1))
    return out


@dataclass(frozen=True)
class MultiIndexSet:
    """The index set P_b = {p in N^d : |p| <= b} in graded lexicographic order."""

    d: int
    b: int
    indices: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        """D_b, the number of coefficients."""
        return len(self.indices)

    @cached_property
    def exponents(self) -> np.ndarray:
        return np.array(self.indices, dtype=np.int64).reshape(self.size, self.d)

    @cached_property
    def degrees(self) -> np.ndarray:
        return self.exponents.sum(axis=1)

    @cached_property
    def factorials(self) -> np.ndarray:
        """p_1! ... p_d! for each index."""
        return np.array(
            [math.prod(math.factorial(k) for k in p) for p in self.indices], dtype=np.float64
        )

    def basis(self, z: np.ndarray) -> np.ndarray:
        """Rows K(z_i) = (z_i^p : p in P_b) for points z of shape (N, d)."""
        z = np.asarray(z, dtype=np.float64).reshape(-1, self.d)
        return np.prod(z[:, None, :] ** self.exponents[None, :, :], axis=2)


def expected_size(d: int, b: int) -> int:
    return sum(math.comb(m + d - 1, d - 1) for m in range(b + 1))


@lru_cache(maxsize=32)
def multi_indices(d: int, b: int) -> MultiIndexSet:
    if d < 1 or b < 0:
        raise InputError(f"multi-index set needs d >= 1 and b >= 0, got d={d}, b={b}")
    indices = tuple(p for m in range(b + 1) for p in _compositions(m, d))
    return MultiIndexSet(d=d, b=b, indices=indices)


@dataclass(frozen=True, eq=False)
class PolyCoeffs:
    """Coefficient vector t = (t_p : p in P_b) of a local polynomial."""

    idxset: MultiIndexSet
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64).reshape(-1)
        if values.shape[0] != self.idxset.size:
            raise InputError(
                f"coefficient vector has {values.shape[0]} entries, expected {self.idxset.size}"
            )
        object.__setattr__(self, "values", values)

    @property
    def intercept(self) -> float:
        return float(self.values[0])

    @property
    def l1_norm(self) -> float:
        return float(np.abs(self.values).sum())

    def evaluate(self, x: np.ndarray, y: np.ndarray, h: float) -> np.ndarray:
        """f_t(x) = sum_p t_p ((x - y) / h)^p, without the window indicator."""
        z = (np.asarray(x, dtype=np.float64).reshape(-1, self.idxset.d) - y) / h
        return self.idxset.basis(z) @ self.values


@dataclass(frozen=True, eq=False)
class WindowData:
    """Observations with X_i in V_h(y) and their cached basis rows."""

    y: np.ndarray
    h: float
    n: int
    idxset: MultiIndexSet
    x: np.ndarray = field(repr=False)
    obs: np.ndarray = field(repr=False)
    basis: np.ndarray = field(repr=False)

    @property
    def N(self) -> int:
        return int(self.obs.shape[0])

    @property
    def d(self) -> int:
        return self.idxset.d


def _snap(v: np.ndarray) -> np.ndarray:
    r = np.rint(v)
    return np.where(np.abs(v - r) < _SNAP_TOL, r, v)


def window(sample: Sample, y: np.ndarray | float, h: float, b: int = 2) -> WindowData:
    """Restrict a sample to V_h(y).

    Membership is the half-open cube (y_j - h/2, y_j + h/2] on every axis,
    evaluated in grid index space so that edges falling on nodes are exact.
    """
    d = sample.d
    center = np.atleast_1d(np.asarray(y, dtype=np.float64))
    if center.shape != (d,):
        raise InputError(f"evaluation point has {center.size} coordinates, expected {d}")
    if not 0.0 < h <= 1.0:
        raise InputError(f"bandwidth h={h} must lie in (0, 1]")

    lo = center - h / 2
    hi = center + h / 2
    if np.any(lo < -_EDGE_TOL) or np.any(hi > 1.0 + _EDGE_TOL):
        raise WindowOutOfDomain(
            f"V_h(y) with y={center.tolist()}, h={h} leaves [0,1]^{d}"
        )

    grid = sample.grid
    k_lo = _snap(lo * grid.m)
    k_hi = _snap(hi * grid.m)
    k = grid.axis_index(grid.points)
    mask = np.all((k > k_lo) & (k <= k_hi), axis=1)
    if not mask.any():
        raise EmptyWindow(f"no design point in V_h(y) for y={center.tolist()}, h={h}")

    idxset = multi_indices(d, b)
    x = grid.points[mask]
    return WindowData(
        y=center,
        h=float(h),
        n=sample.n,
        idxset=idxset,
        x=x,
        obs=sample.y_values[mask],
        basis=idxset.basis((x - center) / h),
    )


@dataclass(frozen=True, eq=False)
class MomentMatrix:
    entries: np.ndarray
    lambda_min: float


def _moment(entries: np.ndarray) -> MomentMatrix:
    entries = (entries + entries.T) / 2
    eigenvalues = np.linalg.eigvalsh(entries)
    return MomentMatrix(entries=entries, lambda_min=max(float(eigenvalues[0]), 0.0))


def design_matrix(win: WindowData, n: int | None = None) -> MomentMatrix:
    """M_nh(y) = (n h^d)^-1 sum_i K^T K over the window, with its smallest eigenvalue."""
    n = win.n if n is None else n
    scale = n * win.h**win.d
    return _moment(win.basis.T @ win.basis / scale)


def analytic_moment_matrix(idxset: MultiIndexSet) -> MomentMatrix:
    """The large-sample limit of M_nh(y): prod_j of int_{-1/2}^{1/2} x^(p_j+q_j) dx."""
    exps = idxset.exponents
    total = exps[:, None, :] + exps[None, :, :]
    one_dim = np.where(total % 2 == 0, 0.5**total / (total + 1), 0.0)
    return _moment(one_dim.prod(axis=2))


@dataclass(frozen=True, eq=False)
class LocalFit:
    """Local least squares coefficients and their rescaled derivative form."""

    theta: PolyCoeffs
    delta: PolyCoeffs
    moment: MomentMatrix


def local_lse(win: WindowData) -> LocalFit:
    """Least squares fit of 2 Y_i on the basis rows of the window.

    delta_p = p_1! ... p_d! h^-|p| theta_p turns the scaled coefficients into
    derivative estimates at y.
    """
    moment = design_matrix(win)
    if moment.lambda_min <= SINGULAR_TOL:
        raise SingularDesign(
            f"moment matrix is singular (lambda_min={moment.lambda_min:.3g}, "
            f"N={win.N}, D_b={win.idxset.size})"
        )
    gram = win.basis.T @ win.basis
    rhs = win.basis.T @ (2.0 * win.obs)
    try:
        factor = cho_factor(gram, lower=True)
        theta = cho_solve(factor, rhs)
    except LinAlgError as exc:
        raise SingularDesign(f"normal equations are not positive definite: {exc}") from exc

    idxset = win.idxset
    delta = idxset.factorials * win.h ** (-idxset.degrees.astype(np.float64)) * theta
    return LocalFit(
        theta=PolyCoeffs(idxset, theta),
        delta=PolyCoeffs(idxset, delta),
        moment=moment,
    )


def plug_in_bounds(delta: PolyCoeffs) -> tuple[float, float]:
    """(A_hat, M_hat) = (delta_0, ||delta||_1)."""
    a_hat = delta.intercept
    if a_hat <= 0.0:
        raise NonPositiveAhat(f"A_hat={a_hat:.6g} is not positive")
    return a_hat, delta.l1_norm


def validity_interval(n: int, b: int, d: int) -> tuple[float, float]:
    """The bandwidth range H_n on which the deviation bounds are stated."""
    log_n = math.log(n)
    lower = max(b + 1.0, log_n ** (1.0 / (d + d * d))) / n ** (1.0 / d)
    upper = (1.0 / log_n) ** (1.0 / (b + d))
    return lower, upper


def warn_if_outside_validity(h: float, n: int, b: int, d: int) -> bool:
    lower, upper = validity_interval(n, b, d)
    if lower <= h <= upper:
        return False
    logger.warning(
        "bandwidth_outside_validity_interval", h=h, lower=lower, upper=upper, n=n, b=b, d=d
    )
    return True
