"""Regression functions used as ground truth.

The shipped functions are one-dimensional; on [0,1]^d they act on the first
coordinate only, so every partial derivative involving another axis is zero.
"""

from __future__ import annotations

import math
import re
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from mulreg.errors import InputError, UnknownFunctionId
from mulreg.local_poly import MultiIndexSet, PolyCoeffs, multi_indices

Evaluator = Callable[[np.ndarray], np.ndarray]
Derivative = Callable[[np.ndarray, int], np.ndarray]

SHIPPED_IDS = ("f1", "f2", "f3", "f4")
_CONSTANT_RE = re.compile(r"^constant\(\s*([^)]+?)\s*\)$")
_DENSE_POINTS = {1: 401, 2: 61}


def _as_points(x: np.ndarray | float) -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 0:
        return arr.reshape(1, 1)
    if arr.ndim == 1:
        return arr.reshape(-1, 1)
    return arr


@dataclass(frozen=True, eq=False)
class FunctionSpec:
    """A regression function f with the metadata the estimators report against.

    ``derivative(points, k)`` returns the k-th derivative along the first axis.
    When it is None, derivatives of order >= 1 are taken as zero.
    """

    id: str
    func: Evaluator
    derivative: Derivative | None = None
    beta_nominal: float | None = None

    def __call__(self, x: np.ndarray | float) -> np.ndarray:
        points = _as_points(x)
        return np.asarray(self.func(points[:, 0]), dtype=np.float64).reshape(-1)

    def partial(self, x: np.ndarray | float, p: tuple[int, ...]) -> np.ndarray:
        """The mixed partial derivative of multi-index p at the given points."""
        points = _as_points(x)
        if any(p[1:]):
            return np.zeros(points.shape[0])
        if p[0] == 0:
            return self(points)
        if self.derivative is None:
            return np.zeros(points.shape[0])
        return np.asarray(self.derivative(points[:, 0], p[0]), dtype=np.float64).reshape(-1)

    def lower_envelope(self, y: np.ndarray | float, h: float) -> float:
        """A(f): infimum of f over V_h(y), evaluated on a dense grid."""
        center = np.atleast_1d(np.asarray(y, dtype=np.float64))
        return float(self(_dense_cube(center, h)).min())

    def derivative_sum(self, y: np.ndarray | float, b: int) -> float:
        """M(f): sum over |p| <= b of |d^p f(y)|."""
        center = np.atleast_1d(np.asarray(y, dtype=np.float64))
        idxset = multi_indices(center.size, b)
        return float(
            sum(abs(self.partial(center[None, :], p)[0]) for p in idxset.indices)
        )


def _dense_cube(center: np.ndarray, h: float) -> np.ndarray:
    d = center.size
    count = _DENSE_POINTS.get(d, 11)
    axes = [
        np.linspace(max(c - h / 2, 0.0), min(c + h / 2, 1.0), count) for c in center
    ]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.reshape(-1) for g in mesh], axis=1)


def _cosine_derivative(x: np.ndarray, k: int) -> np.ndarray:
    w = 2 * math.pi
    return w**k * np.cos(w * x + k * math.pi / 2)


def _f1() -> FunctionSpec:
    return FunctionSpec(
        id="f1",
        func=lambda x: np.cos(2 * math.pi * x) + 2.0,
        derivative=_cosine_derivative,
        beta_nominal=2.0,
    )


def _f2() -> FunctionSpec:
    def func(x: np.ndarray) -> np.ndarray:
        return np.where(x <= 1 / 3, 2.0, np.where(x <= 2 / 3, 1.0, 3.0))

    return FunctionSpec(
        id="f2",
        func=func,
        derivative=lambda x, k: np.zeros_like(x),
    )


def _f3() -> FunctionSpec:
    w = 19 * math.pi

    def derivative(x: np.ndarray, k: int) -> np.ndarray:
        return _cosine_derivative(x, k) + 0.3 * w**k * np.sin(w * x + k * math.pi / 2)

    return FunctionSpec(
        id="f3",
        func=lambda x: np.cos(2 * math.pi * x) + 2.0 + 0.3 * np.sin(w * x),
        derivative=derivative,
        beta_nominal=2.0,
    )


F4_SLOPE = 1.5
F4_LINEAR_REGION = (3 / 8, 5 / 8)


def _f4() -> FunctionSpec:
    # Linear 2 + 1.5 (x - 1/2) on [3/8, 5/8]; C^1 cubic blends back to level 2
    # with zero slope at x = 0 and x = 1.
    lo, hi = F4_LINEAR_REGION
    knots = np.array([0.0, lo, hi, 1.0])
    values = np.array([2.0, 2.0 + F4_SLOPE * (lo - 0.5), 2.0 + F4_SLOPE * (hi - 0.5), 2.0])
    slopes = np.array([0.0, F4_SLOPE, F4_SLOPE, 0.0])
    spline = CubicHermiteSpline(knots, values, slopes)

    def derivative(x: np.ndarray, k: int) -> np.ndarray:
        outer = np.asarray(spline.derivative(k)(x)) if k <= 3 else np.zeros_like(x)
        # Both knots belong to the linear piece.
        linear = (x >= lo) & (x <= hi)
        return np.where(linear, F4_SLOPE if k == 1 else 0.0, outer)

    return FunctionSpec(
        id="f4",
        func=lambda x: np.asarray(spline(x)),
        derivative=derivative,
        beta_nominal=2.0,
    )


def constant(c: float) -> FunctionSpec:
    if not c > 0:
        raise InputError(f"constant function level must be positive, got {c}")
    return FunctionSpec(
        id=f"constant({c:g})",
        func=lambda x: np.full(x.shape, float(c)),
        derivative=lambda x, k: np.zeros_like(x),
    )


_SHIPPED: dict[str, Callable[[], FunctionSpec]] = {"f1": _f1, "f2": _f2, "f3": _f3, "f4": _f4}


def test_function(spec: str | Evaluator, beta_nominal: float | None = None) -> FunctionSpec:
    """Resolve a function identifier ("f1".."f4", "constant(c)") or wrap a callable.

    A callable receives the first coordinate of each point as a 1-D array.
    """
    if callable(spec):
        return FunctionSpec(id="custom", func=spec, beta_nominal=beta_nominal)
    key = spec.strip().lower()
    if key in _SHIPPED:
        return _SHIPPED[key]()
    match = _CONSTANT_RE.match(key)
    if match:
        try:
            level = float(match.group(1))
        except ValueError as exc:
            raise UnknownFunctionId(f"bad constant level in {spec!r}") from exc
        return constant(level)
    raise UnknownFunctionId(
        f"unknown function {spec!r}; expected one of {', '.join(SHIPPED_IDS)} or constant(c)"
    )


# Not a test case despite the name.
test_function.__test__ = False  # type: ignore[attr-defined]


def taylor_coefficients(
    f: FunctionSpec, y: np.ndarray | float, h: float, idxset: MultiIndexSet
) -> PolyCoeffs:
    """omega_p = d^p f(y) h^|p| / p!, the local polynomial closest to f near y."""
    center = np.atleast_1d(np.asarray(y, dtype=np.float64))
    values = np.array(
        [
            f.partial(center[None, :], p)[0] * h ** sum(p) / fact
            for p, fact in zip(idxset.indices, idxset.factorials, strict=True)
        ]
    )
    return PolyCoeffs(idxset, values)


def approximation_bias(
    f: FunctionSpec, y: np.ndarray | float, h: float, idxset: MultiIndexSet
) -> float:
    """b_h = sup over V_h(y) of |f_omega(x) - f(x)|, on a dense grid."""
    center = np.atleast_1d(np.asarray(y, dtype=np.float64))
    omega = taylor_coefficients(f, center, h, idxset)
    pts = _dense_cube(center, h)
    return float(np.abs(omega.evaluate(pts, center, h) - f(pts)).max())


@dataclass(frozen=True)
class HolderReport:
    derivative_sup_sum: float
    remainder_constant: float
    member: bool


def holder_check(
    f: FunctionSpec, beta: float, L: float, M: float, points: int = 201
) -> HolderReport:
    """Empirical membership of f in the isotropic Holder class H_1(beta, L, M).

    Checks both defining inequalities on a uniform grid of [0,1]: the sum of
    derivative sup-norms up to order floor(beta) (largest integer strictly
    below beta) against M, and the Taylor remainder against L |x - y|^beta.
    """
    order = math.ceil(beta) - 1
    x = np.linspace(0.0, 1.0, points)
    derivs = np.stack([f.partial(x, (k,)) for k in range(order + 1)])
    sup_sum = float(np.abs(derivs).max(axis=1).sum())

    diff = x[None, :] - x[:, None]  # row y, column x
    taylor = np.zeros_like(diff)
    for k in range(order + 1):
        taylor += derivs[k][:, None] * diff**k / math.factorial(k)
    remainder = np.abs(f(x)[None, :] - taylor)
    off_diag = ~np.eye(points, dtype=bool)
    ratio = float((remainder[off_diag] / np.abs(diff[off_diag]) ** beta).max())
    return HolderReport(
        derivative_sup_sum=sup_sum,
        remainder_constant=ratio,
        member=sup_sum <= M and ratio <= L,
    )
