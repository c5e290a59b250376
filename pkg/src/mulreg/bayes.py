"""Locally bayesian estimator on the coefficient set Theta(A, M).

The criterion pi_h(t) = int ||t - u||_1 L_h(u) du separates across
coordinates, so its unconstrained minimizer is the vector of coordinate-wise
posterior medians. When that vector leaves Theta the normalized criterion is
minimized over Theta by projected subgradient descent.

The posterior is integrated either on a tensor grid (small D_b) or by
self-normalized sampling from a uniform proposal on a box (large D_b); both
reduce to per-coordinate marginals with a piecewise-linear CDF. The box
starts as a linear-programming bound on the likelihood's level set, in units
of the largest observation, and zooms onto the bulk until it stops shrinking.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import TYPE_CHECKING, Literal

import numpy as np
import structlog
from pydantic import BaseModel
from scipy.optimize import linprog, minimize_scalar

from mulreg.errors import EmptyPosteriorSupport, InputError, InvalidBounds, NonConvergence
from mulreg.local_poly import MultiIndexSet, PolyCoeffs, warn_if_outside_validity, window
from mulreg.model import make_rng

if TYPE_CHECKING:
    from mulreg.config import IntegratorConfig
    from mulreg.local_poly import WindowData
    from mulreg.model import Sample

logger = structlog.get_logger()

MEMBERSHIP_TOL = 1e-9
LOG_MASS_FLOOR = 30.0
ALIAS_FACTOR = 4.0
STALL_SHRINK = 0.9
MIN_WIDTH = 1e-9
REFERENCE_STEPS = 8
BOX_ITERATIONS = 12
STEP_TOL = 1e-8
STALL_TOL = 1e-6
MAX_ITER = 10_000
SAMPLE_BINS = 1024
ELEMENT_BUDGET = 1 << 22


@dataclass(frozen=True)
class ParamSet:
    """Theta(A, M) = {t : 2 t_0 - ||t||_1 >= A, ||t||_1 <= M}.

    Membership guarantees A <= f_t(x) <= M on the window because every basis
    monomial is bounded by 1 in absolute value there.
    """

    A_low: float
    M_up: float
    idxset: MultiIndexSet

    def __post_init__(self) -> None:
        if not 0.0 < self.A_low < self.M_up:
            raise InvalidBounds(
                f"need 0 < A_low < M_up, got A_low={self.A_low}, M_up={self.M_up}"
            )

    def contains(self, t: np.ndarray | PolyCoeffs, tol: float = 0.0) -> bool:
        return bool(self.contains_many(_as_vector(t)[None, :], tol)[0])

    def contains_many(self, nodes: np.ndarray, tol: float = 0.0) -> np.ndarray:
        l1 = np.abs(nodes).sum(axis=1)
        return (2.0 * nodes[:, 0] - l1 >= self.A_low - tol) & (l1 <= self.M_up + tol)

    def hull(self) -> tuple[np.ndarray, np.ndarray]:
        """Smallest axis-aligned box containing Theta."""
        half = (self.M_up - self.A_low) / 2
        lo = np.full(self.idxset.size, -half)
        hi = np.full(self.idxset.size, half)
        lo[0], hi[0] = self.A_low, self.M_up
        return lo, hi

    def scaled(self, c: float) -> ParamSet:
        return ParamSet(self.A_low * c, self.M_up * c, self.idxset)


def _as_vector(t: np.ndarray | PolyCoeffs) -> np.ndarray:
    if isinstance(t, PolyCoeffs):
        return t.values
    return np.asarray(t, dtype=np.float64).reshape(-1)


def membership(t: np.ndarray | PolyCoeffs, pset: ParamSet) -> bool:
    return pset.contains(t)


def log_pseudo_likelihood(t: np.ndarray | PolyCoeffs, win: WindowData) -> float:
    """log L_h(t) = -sum log f_t(X_i) if Y_i <= f_t(X_i) for all i, else -inf.

    A node with f_t(X_i) <= 0 gives -inf even when Y_i = 0.
    """
    return float(_log_likelihood_nodes(_as_vector(t)[None, :], win)[0])


def _log_likelihood_nodes(nodes: np.ndarray, win: WindowData) -> np.ndarray:
    out = np.empty(nodes.shape[0])
    rows = max(1, ELEMENT_BUDGET // max(win.N, 1))
    for start in range(0, nodes.shape[0], rows):
        fitted = nodes[start : start + rows] @ win.basis.T
        positive = fitted > 0.0
        ok = positive.all(axis=1) & (win.obs[None, :] <= fitted).all(axis=1)
        ll = -np.log(np.where(positive, fitted, 1.0)).sum(axis=1)
        out[start : start + rows] = np.where(ok, ll, -np.inf)
    return out


class IntegratorReport(BaseModel):
    method: Literal["grid", "sample"]
    nodes: int
    resolution: float
    effective_sample_size: float
    support_fraction: float


@dataclass(frozen=True, eq=False)
class Marginal:
    """One coordinate of the posterior: mass spread uniformly inside cells."""

    edges: np.ndarray
    masses: np.ndarray

    @classmethod
    def from_cells(cls, edges: np.ndarray, masses: np.ndarray) -> Marginal:
        total = masses.sum()
        return cls(edges=edges, masses=masses / total)

    @property
    def cumulative(self) -> np.ndarray:
        return np.concatenate([[0.0], np.cumsum(self.masses)])

    def cdf(self, t: float) -> float:
        return float(np.interp(t, self.edges, self.cumulative))

    def median(self) -> float:
        """Smallest t with F(t) >= 1/2."""
        cum = self.cumulative
        i = int(np.searchsorted(cum, 0.5, side="left"))
        i = min(max(i, 1), self.masses.size)
        left, right = self.edges[i - 1], self.edges[i]
        mass = self.masses[i - 1]
        if mass <= 0.0:
            return float(right)
        return float(left + (right - left) * (0.5 - cum[i - 1]) / mass)

    def expected_abs(self, t: float) -> float:
        """E|t - u| under this marginal."""
        a, b = self.edges[:-1], self.edges[1:]
        mid = (a + b) / 2
        width = np.where(b > a, b - a, 1.0)
        inside = ((t - a) ** 2 + (b - t) ** 2) / (2 * width)
        per_cell = np.where(t <= a, mid - t, np.where(t >= b, t - mid, inside))
        return float(per_cell @ self.masses)

    def subgradient(self, t: float) -> float:
        """P(u < t) - P(u > t)."""
        return 2.0 * self.cdf(t) - 1.0

    def spread(self) -> float:
        cum = self.cumulative
        q1 = np.interp(0.25, cum, self.edges)
        q3 = np.interp(0.75, cum, self.edges)
        return float(q3 - q1)


@dataclass(frozen=True, eq=False)
class Posterior:
    """Normalized posterior on Theta proportional to L_h(u) du, by coordinate."""

    marginals: tuple[Marginal, ...]
    report: IntegratorReport

    def medians(self) -> np.ndarray:
        return np.array([m.median() for m in self.marginals])

    def expected_l1(self, t: np.ndarray | PolyCoeffs) -> float:
        """The normalized criterion: sum_p E|t_p - u_p|."""
        v = _as_vector(t)
        return float(sum(m.expected_abs(v[p]) for p, m in enumerate(self.marginals)))

    def subgradient(self, t: np.ndarray) -> np.ndarray:
        return np.array([m.subgradient(t[p]) for p, m in enumerate(self.marginals)])

    def spread(self) -> float:
        return float(np.mean([m.spread() for m in self.marginals]))

    def scaled(self, c: float) -> Posterior:
        report = self.report.model_copy(update={"resolution": self.report.resolution * c})
        marginals = tuple(Marginal(edges=m.edges * c, masses=m.masses) for m in self.marginals)
        return Posterior(marginals=marginals, report=report)


def _normalized(win: WindowData, pset: ParamSet) -> tuple[WindowData, ParamSet, float]:
    """Express a window and its set in units of the largest observation.

    Every box, threshold and tolerance below is then free of the data's
    scale, so multiplying Y and the bounds by c multiplies the result by c.
    """
    top = float(win.obs.max()) if win.N else 0.0
    scale = top if top > 0.0 else pset.A_low
    unit_set = ParamSet(pset.A_low / scale, pset.M_up / scale, pset.idxset)
    return replace(win, obs=win.obs / scale), unit_set, scale


def _support_constraints(win: WindowData, pset: ParamSet) -> tuple[np.ndarray, np.ndarray]:
    """Y_i <= f_u(X_i) and Theta as A_ub x <= b_ub over x = (u, v), v_r >= |u_r|."""
    dim = win.idxset.size
    rest = dim - 1
    data = np.hstack([-win.basis, np.zeros((win.N, rest))])
    lower = np.concatenate([[-1.0], np.zeros(rest), np.ones(rest)])
    upper = np.concatenate([[1.0], np.zeros(rest), np.ones(rest)])
    signs = np.zeros((2 * rest, dim + rest))
    for r in range(rest):
        signs[2 * r, [1 + r, dim + r]] = (1.0, -1.0)
        signs[2 * r + 1, [1 + r, dim + r]] = (-1.0, -1.0)
    a_ub = np.vstack([data, lower, upper, signs])
    b_ub = np.concatenate([-win.obs, [-pset.A_low, pset.M_up], np.zeros(2 * rest)])
    return a_ub, b_ub


def _solve_lp(
    cost: np.ndarray, a_ub: np.ndarray, b_ub: np.ndarray, lo: np.ndarray, hi: np.ndarray
) -> tuple[int, np.ndarray]:
    dim = lo.size
    bounds = [(lo[p], hi[p]) for p in range(dim)] + [(0.0, None)] * (dim - 1)
    full = np.concatenate([cost, np.zeros(dim - 1)])
    result = linprog(full, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs")
    x = result.x[:dim] if result.x is not None else np.full(dim, np.nan)
    return int(result.status), x


def _reference_point(
    win: WindowData, pset: ParamSet, a_ub: np.ndarray, b_ub: np.ndarray
) -> tuple[np.ndarray, float]:
    """A vertex of the support with high likelihood, by successive linearization.

    sum log f_u(X_i) is concave in u, so minimizing its tangent over the
    support never increases it.
    """
    lo, hi = pset.hull()
    floor = np.maximum(win.obs, pset.A_low)
    weights = 1.0 / floor
    u = None
    for _ in range(REFERENCE_STEPS):
        status, candidate = _solve_lp(weights @ win.basis, a_ub, b_ub, lo, hi)
        if status == 2:
            raise EmptyPosteriorSupport(
                f"no coefficient vector in Theta lies above all N={win.N} observations "
                f"(h={win.h})"
            )
        if status != 0:
            break
        if u is not None and np.allclose(candidate, u, rtol=0.0, atol=1e-12):
            u = candidate
            break
        u = candidate
        weights = 1.0 / np.maximum(win.basis @ u, floor)
    if u is None:
        raise EmptyPosteriorSupport(f"support of the posterior not found (N={win.N}, h={win.h})")
    fitted = np.maximum(win.basis @ u, floor)
    return u, float(-np.log(fitted).sum())


def _support_box(win: WindowData, pset: ParamSet) -> tuple[np.ndarray, np.ndarray]:
    """Axis-aligned box holding every u with log L(u) >= log L_max - LOG_MASS_FLOOR.

    Inside a box each fit f_i lies in [lo_i, hi_i], where the secant of log
    through (lo_i, hi_i) bounds log f_i from below. That turns the level set
    into one linear cut, and bounding the cut polytope shrinks the box, which
    tightens the secants in turn.
    """
    a_ub, b_ub = _support_constraints(win, pset)
    _, log_ref = _reference_point(win, pset, a_ub, b_ub)
    lo, hi = pset.hull()
    pad = 1e-9 * (hi - lo)
    n_data = win.N
    floor = np.maximum(win.obs, pset.A_low)
    positive = np.clip(win.basis, 0.0, None)
    negative = np.clip(win.basis, None, 0.0)
    for _ in range(BOX_ITERATIONS):
        f_lo = np.maximum(floor, positive @ lo + negative @ hi)
        f_hi = np.maximum(positive @ hi + negative @ lo, f_lo)
        gap = f_hi - f_lo
        wide = gap > 1e-12 * f_hi
        slope = np.where(wide, np.log(f_hi / f_lo) / np.where(wide, gap, 1.0), 1.0 / f_lo)
        cut = np.concatenate([slope @ win.basis, np.zeros(lo.size - 1)])
        level = slope @ f_lo - np.log(f_lo).sum() - log_ref + LOG_MASS_FLOOR

        # Observations already below every fit in the box cannot bind.
        binding = np.concatenate(
            [positive @ lo + negative @ hi < win.obs, np.ones(b_ub.size - n_data, dtype=bool)]
        )
        rows = np.vstack([a_ub[binding], cut])
        rhs = np.concatenate([b_ub[binding], [level]])

        new_lo, new_hi = lo.copy(), hi.copy()
        for p in range(lo.size):
            axis = np.zeros(lo.size)
            axis[p] = 1.0
            status, x = _solve_lp(axis, rows, rhs, lo, hi)
            if status == 0:
                new_lo[p] = max(lo[p], x[p] - pad[p])
            status, x = _solve_lp(-axis, rows, rhs, lo, hi)
            if status == 0:
                new_hi[p] = min(hi[p], x[p] + pad[p])
        new_hi = np.maximum(new_hi, new_lo + MIN_WIDTH)
        stalled = np.all(new_hi - new_lo >= STALL_SHRINK * (hi - lo))
        lo, hi = new_lo, new_hi
        if stalled:
            break
    return lo, hi


def _axis_edges(lo: np.ndarray, hi: np.ndarray, k: int) -> list[np.ndarray]:
    """Cell edges per axis; geometric on the intercept, where L decays like u^-N."""
    edges = [np.linspace(lo[p], hi[p], k + 1) for p in range(lo.size)]
    if lo[0] > 0.0:
        edges[0] = np.geomspace(lo[0], hi[0], k + 1)
    return edges


def _tensor_nodes(edges: list[np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    """Cell centers of the tensor grid and the log volume of each cell."""
    centers = np.meshgrid(*[(e[:-1] + e[1:]) / 2 for e in edges], indexing="ij")
    log_widths = np.meshgrid(*[np.log(np.diff(e)) for e in edges], indexing="ij")
    nodes = np.stack([g.reshape(-1) for g in centers], axis=1)
    return nodes, sum(g.reshape(-1) for g in log_widths)


def _grid_zoom(
    win: WindowData, nodes: np.ndarray, logd: np.ndarray, edges: list[np.ndarray]
) -> tuple[np.ndarray, np.ndarray] | None:
    """Box of the cells within reach of the bulk, or None once it stops shrinking.

    A cell center can miss the density inside its cell by up to the variation
    of log L across the cell, so the mass threshold is widened by that amount.
    """
    k = edges[0].size - 1
    shape = (k,) * len(edges)
    best = int(np.argmax(logd))
    cell = np.unravel_index(best, shape)
    widths = np.array([e[i + 1] - e[i] for e, i in zip(edges, cell, strict=True)])
    variation = 0.5 * float((np.abs(win.basis) @ widths / (win.basis @ nodes[best])).sum())
    keep = logd >= logd[best] - LOG_MASS_FLOOR - ALIAS_FACTOR * variation
    kept = np.unravel_index(np.nonzero(keep)[0], shape)

    lo = np.empty(len(edges))
    hi = np.empty(len(edges))
    span = np.empty(len(edges), dtype=np.int64)
    for p, e in enumerate(edges):
        first = max(int(kept[p].min()) - 1, 0)
        last = min(int(kept[p].max()) + 2, k)
        lo[p], hi[p], span[p] = e[first], e[last], last - first
    if np.all(span >= STALL_SHRINK * k):
        return None
    return lo, hi


def _weights(logw: np.ndarray) -> np.ndarray:
    finite = np.isfinite(logw)
    w = np.zeros_like(logw)
    w[finite] = np.exp(logw[finite] - logw[finite].max())
    return w


def _ess(w: np.ndarray) -> float:
    return float(w.sum() ** 2 / (w**2).sum())


def _grid_posterior(win: WindowData, pset: ParamSet, cfg: IntegratorConfig) -> Posterior:
    k = cfg.nodes_per_axis
    dim = win.idxset.size
    lo, hi = _support_box(win, pset)
    for pass_ in range(cfg.refine_passes):
        edges = _axis_edges(lo, hi, k)
        nodes, log_volume = _tensor_nodes(edges)
        logd = _log_likelihood_nodes(nodes, win)
        logd[~pset.contains_many(nodes)] = -np.inf
        finite = np.isfinite(logd)
        if not finite.any():
            raise EmptyPosteriorSupport(
                f"no grid node with positive likelihood (N={win.N}, h={win.h}, pass={pass_})"
            )
        zoomed = _grid_zoom(win, nodes, logd, edges)
        if zoomed is None:
            break
        lo, hi = zoomed

    w = _weights(logd + log_volume).reshape((k,) * dim)
    marginals = []
    for p in range(dim):
        other = tuple(a for a in range(dim) if a != p)
        masses = w.sum(axis=other) if other else w
        marginals.append(Marginal.from_cells(edges[p], masses))

    flat = w.reshape(-1)
    report = IntegratorReport(
        method="grid",
        nodes=int(flat.size),
        resolution=float(max(np.diff(e).max() for e in edges)),
        effective_sample_size=_ess(flat),
        support_fraction=float(finite.mean()),
    )
    logger.debug("grid_posterior", N=win.N, passes=pass_ + 1, ess=report.effective_sample_size)
    return Posterior(marginals=tuple(marginals), report=report)


def _sample_zoom(
    nodes: np.ndarray, logw: np.ndarray, lo: np.ndarray, hi: np.ndarray
) -> tuple[np.ndarray, np.ndarray] | None:
    finite = np.isfinite(logw)
    kept = nodes[finite & (logw >= logw[finite].max() - LOG_MASS_FLOOR)]
    margin = 0.05 * (hi - lo)
    new_lo = np.maximum(lo, kept.min(axis=0) - margin)
    new_hi = np.minimum(hi, kept.max(axis=0) + margin)
    if np.all(new_hi - new_lo >= STALL_SHRINK * (hi - lo)):
        return None
    return new_lo, new_hi


def _sampled_posterior(win: WindowData, pset: ParamSet, cfg: IntegratorConfig) -> Posterior:
    rng = make_rng(cfg.seed)
    dim = win.idxset.size
    lo, hi = _support_box(win, pset)
    for pass_ in range(cfg.refine_passes):
        nodes = lo + rng.random((cfg.proposal_count, dim)) * (hi - lo)
        logw = _log_likelihood_nodes(nodes, win)
        logw[~pset.contains_many(nodes)] = -np.inf
        finite = np.isfinite(logw)
        if not finite.any():
            raise EmptyPosteriorSupport(
                f"no proposal with positive likelihood (N={win.N}, h={win.h}, pass={pass_})"
            )
        zoomed = _sample_zoom(nodes, logw, lo, hi)
        if zoomed is None or pass_ == cfg.refine_passes - 1:
            break
        lo, hi = zoomed

    w = _weights(logw)
    accepted = nodes[finite]
    wa = w[finite]
    marginals = []
    for p in range(dim):
        edges = np.linspace(lo[p], hi[p], SAMPLE_BINS + 1)
        masses, _ = np.histogram(accepted[:, p], bins=edges, weights=wa)
        marginals.append(Marginal.from_cells(edges, masses))

    report = IntegratorReport(
        method="sample",
        nodes=cfg.proposal_count,
        resolution=float(((hi - lo) / SAMPLE_BINS).max()),
        effective_sample_size=_ess(wa),
        support_fraction=float(finite.mean()),
    )
    return Posterior(marginals=tuple(marginals), report=report)


def _unit_posterior(win: WindowData, pset: ParamSet, cfg: IntegratorConfig) -> Posterior:
    if pset.idxset != win.idxset:
        raise InputError("parameter set and window use different index sets")
    if cfg.resolve(win.idxset.size) == "grid":
        return _grid_posterior(win, pset, cfg)
    return _sampled_posterior(win, pset, cfg)


def build_posterior(win: WindowData, pset: ParamSet, cfg: IntegratorConfig) -> Posterior:
    unit_win, unit_set, scale = _normalized(win, pset)
    return _unit_posterior(unit_win, unit_set, cfg).scaled(scale)


def posterior_medians(win: WindowData, pset: ParamSet, cfg: IntegratorConfig) -> PolyCoeffs:
    """Coordinate-wise posterior medians: the unconstrained minimizer of pi_h."""
    return PolyCoeffs(win.idxset, build_posterior(win, pset, cfg).medians())


def _project_l1_ball(v: np.ndarray, radius: float) -> np.ndarray:
    if radius <= 0.0:
        return np.zeros_like(v)
    magnitude = np.abs(v)
    if magnitude.sum() <= radius:
        return v
    srt = np.sort(magnitude)[::-1]
    cum = np.cumsum(srt)
    rho = np.nonzero(srt > (cum - radius) / np.arange(1, v.size + 1))[0][-1]
    shift = (cum[rho] - radius) / (rho + 1)
    return np.sign(v) * np.clip(magnitude - shift, 0.0, None)


def project_onto_param_set(v: np.ndarray, pset: ParamSet) -> np.ndarray:
    """Euclidean projection onto Theta.

    Theta is {t_0 in [A, M], ||t_rest||_1 <= min(t_0 - A, M - t_0)}: for a
    fixed intercept the rest projects onto an l1 ball, and the squared
    distance is convex in the intercept.
    """
    v = np.asarray(v, dtype=np.float64)
    if pset.contains(v):
        return v.copy()
    A, M = pset.A_low, pset.M_up
    if v.size == 1:
        return np.clip(v, A, M)

    head, rest = v[0], v[1:]

    def radius(t0: float) -> float:
        return max(min(t0 - A, M - t0), 0.0)

    def distance(t0: float) -> float:
        return float((t0 - head) ** 2 + ((rest - _project_l1_ball(rest, radius(t0))) ** 2).sum())

    result = minimize_scalar(
        distance,
        bounds=(A, M),
        method="bounded",
        options={"xatol": 1e-13 * M},
    )
    t0 = float(result.x)
    return np.concatenate([[t0], _project_l1_ball(rest, radius(t0))])


def minimize_expected_l1(
    posterior: Posterior,
    pset: ParamSet,
    start: np.ndarray,
    max_iter: int = MAX_ITER,
) -> tuple[np.ndarray, int]:
    """Projected subgradient descent of sum_p E|t_p - u_p| over Theta.

    Steps shrink like 1/sqrt(k); the best iterate is returned. Step tolerances
    are relative to M_up so that rescaling the data rescales the path.
    """
    t = project_onto_param_set(start, pset)
    base = posterior.spread() or (pset.M_up - pset.A_low) / 10
    best, best_value = t, posterior.expected_l1(t)
    move = np.inf
    iteration = 0
    for iteration in range(1, max_iter + 1):
        step = base / np.sqrt(iteration)
        candidate = project_onto_param_set(t - step * posterior.subgradient(t), pset)
        move = float(np.linalg.norm(candidate - t))
        t = candidate
        value = posterior.expected_l1(t)
        if value < best_value:
            best, best_value = t, value
        if move < STEP_TOL * pset.M_up:
            break
    else:
        if move > STALL_TOL * pset.M_up:
            raise NonConvergence(
                f"projected descent stalled after {max_iter} iterations (last step {move:.3g})"
            )
    return best, iteration


@dataclass(frozen=True, eq=False)
class PosteriorEstimate:
    theta_hat: PolyCoeffs
    f_hat_y: float
    integrator_report: IntegratorReport
    iterations: int = 0
    constrained: bool = False


def bayes_estimate(win: WindowData, pset: ParamSet, cfg: IntegratorConfig) -> PosteriorEstimate:
    """theta_hat(h) = argmin over Theta of pi_h, and f_hat(y) = theta_hat_0."""
    unit_win, unit_set, scale = _normalized(win, pset)
    posterior = _unit_posterior(unit_win, unit_set, cfg)
    start = posterior.medians()
    if unit_set.contains(start):
        theta, iterations, constrained = start, 0, False
    else:
        theta, iterations = minimize_expected_l1(posterior, unit_set, start)
        constrained = True
    theta = theta * scale
    if not pset.contains(theta, MEMBERSHIP_TOL):
        theta = project_onto_param_set(theta, pset)
    coeffs = PolyCoeffs(win.idxset, theta)
    return PosteriorEstimate(
        theta_hat=coeffs,
        f_hat_y=coeffs.intercept,
        integrator_report=posterior.scaled(scale).report,
        iterations=iterations,
        constrained=constrained,
    )


def minimax_bandwidth(beta: float, L: float, n: int, d: int) -> float:
    """h_bar = (L n)^(-1 / (beta + d)), the bias/variance balance L d h^beta ~ 1/(n h^d)."""
    if beta <= 0 or L <= 0:
        raise InputError(f"need beta > 0 and L > 0, got beta={beta}, L={L}")
    return float((L * n) ** (-1.0 / (beta + d)))


def minimax_estimate(
    sample: Sample,
    y: np.ndarray | float,
    beta: float,
    L: float,
    A: float,
    M: float,
    b: int,
    cfg: IntegratorConfig,
) -> PosteriorEstimate:
    """Estimator with known class constants: window at h_bar, fixed set Theta(A, M)."""
    h = minimax_bandwidth(beta, L, sample.n, sample.d)
    warn_if_outside_validity(h, sample.n, b, sample.d)
    win = window(sample, y, h, b)
    estimate = bayes_estimate(win, ParamSet(A, M, win.idxset), cfg)
    logger.debug("minimax_estimate", h=h, N=win.N, f_hat=estimate.f_hat_y)
    return estimate
