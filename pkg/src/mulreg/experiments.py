"""Monte Carlo risk engine.

Replication r of a run draws its sample from the stream (master_seed, r), so
every report is a deterministic function of its configuration and master
seed, whatever the number of workers. Failed replications are counted; a run
fails as a whole only when more than a tenth of them do.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
import structlog
from joblib import Parallel, delayed
from pydantic import BaseModel, ConfigDict, Field
from scipy import stats

from mulreg.bayes import bayes_estimate, minimax_bandwidth, minimax_estimate
from mulreg.config import IntegratorConfig
from mulreg.errors import EstimationError, InputError, TooManyFailures
from mulreg.functions import F4_LINEAR_REGION, FunctionSpec, test_function
from mulreg.lepski import (
    DEFAULT_C_THR,
    ThresholdMode,
    adaptive_estimate,
    bandwidth_grid,
    default_h_max,
    fixed_bandwidth_estimate,
    plug_in_param_set,
)
from mulreg.local_poly import expected_size, local_lse, window
from mulreg.model import DesignGrid, NoiseMode, Sample, make_grid, simulate

logger = structlog.get_logger()

EstimatorKind = Literal["adaptive", "oracle", "minimax", "lse_baseline", "fixed", "parametric_f4"]

MAX_FAILURE_FRACTION = 0.1
# The simulation study fits local lines.
SIMULATION_DEGREE = 1
F4_POINT = 0.5
F4_H_STAR = (F4_LINEAR_REGION[1] - F4_LINEAR_REGION[0]) / 2
# The parametric comparator: a window of width h_star, inside the linear region.
F4_WINDOW = F4_H_STAR
F4_H_MAX = 0.5
TAIL_FIT_RANGE = (0.01, 0.9)


class EstimatorSpec(BaseModel):
    """Everything an estimator needs besides the sample and the point."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: EstimatorKind = "adaptive"
    b: int = Field(default=SIMULATION_DEGREE, ge=0)
    q: float = Field(default=1.0, ge=1.0)
    mode: ThresholdMode = "practical"
    c_thr: float = Field(default=DEFAULT_C_THR, gt=0.0)
    integrator: IntegratorConfig = Field(default_factory=IntegratorConfig)
    h: float | None = None
    h_max: float | None = None
    h_candidates: tuple[float, ...] | None = None
    beta: float | None = None
    lipschitz: float = 1.0
    a_low: float | None = None
    m_up: float | None = None
    noise: NoiseMode = "uniform"


class CandidateRisk(BaseModel):
    h: float
    risk: float
    standard_error: float


class BandwidthCount(BaseModel):
    h: float
    count: int


class RiskReport(BaseModel):
    """Mean absolute error E|f_hat(y) - f(y)| with its Monte Carlo standard error.

    For the oracle and LSE baseline ``risk`` is the smallest candidate risk and
    ``candidates`` holds the whole curve. For the adaptive estimator
    ``candidates`` holds the per-scale risks of the same replications.
    """

    model_config = ConfigDict(ser_json_inf_nan="constants")

    function_id: str
    n: int
    d: int
    y: list[float]
    reps: int
    estimator: EstimatorKind
    risk: float
    standard_error: float
    failed: int = 0
    h_oracle: float | None = None
    candidates: list[CandidateRisk] | None = None
    bandwidth_mean: float | None = None
    bandwidth_histogram: list[BandwidthCount] | None = None
    fallback_scales: int = 0

    @property
    def oracle_risk(self) -> float:
        if not self.candidates:
            return self.risk
        return min(c.risk for c in self.candidates)


@dataclass
class _Outcome:
    rep: int
    error: float = math.nan
    ladder: np.ndarray | None = None
    selected_h: float | None = None
    fallbacks: int = 0
    failure: str | None = None


def lse_estimate(
    sample: Sample, y: np.ndarray | float, h: float, b: int = SIMULATION_DEGREE
) -> float:
    """Intercept of the local least squares fit of 2 Y_i: the linear comparator."""
    return local_lse(window(sample, y, h, b)).theta.intercept


def _run_rep(
    spec: EstimatorSpec,
    f: FunctionSpec,
    grid: DesignGrid,
    center: np.ndarray,
    truth: float,
    seed: int,
    rep: int,
    candidates: tuple[float, ...],
) -> _Outcome:
    sample = simulate(f, grid, seed, rep, noise=spec.noise)
    try:
        if spec.kind == "adaptive":
            f_hat, trace = adaptive_estimate(
                sample, center, spec.b, spec.q, spec.integrator, spec.mode, spec.c_thr, spec.h_max
            )
            return _Outcome(
                rep=rep,
                error=abs(f_hat - truth),
                ladder=np.array([abs(e.f_hat - truth) for e in trace.estimates]),
                selected_h=trace.selected_h,
                fallbacks=trace.fallback_count,
            )
        if spec.kind == "oracle":
            top = spec.h_max or default_h_max(sample.n, spec.b, sample.d)
            pset, _, _ = plug_in_param_set(sample, center, spec.b, top)
            errors = [
                bayes_estimate(window(sample, center, h, spec.b), pset, spec.integrator).f_hat_y
                for h in candidates
            ]
            return _Outcome(rep=rep, ladder=np.abs(np.array(errors) - truth))
        if spec.kind == "lse_baseline":
            errors = [abs(lse_estimate(sample, center, h, spec.b) - truth) for h in candidates]
            return _Outcome(rep=rep, ladder=np.array(errors))
        if spec.kind == "minimax":
            assert spec.beta is not None and spec.a_low is not None and spec.m_up is not None
            est = minimax_estimate(
                sample,
                center,
                spec.beta,
                spec.lipschitz,
                spec.a_low,
                spec.m_up,
                spec.b,
                spec.integrator,
            )
            return _Outcome(rep=rep, error=abs(est.f_hat_y - truth))
        assert spec.h is not None
        est = fixed_bandwidth_estimate(sample, center, spec.h, spec.b, spec.integrator, spec.h_max)
        return _Outcome(rep=rep, error=abs(est.f_hat_y - truth))
    except EstimationError as exc:
        return _Outcome(rep=rep, failure=f"{type(exc).__name__}: {exc}")


def minimax_defaults(
    f: FunctionSpec,
    center: np.ndarray,
    n: int,
    b: int,
    beta: float | None = None,
    lipschitz: float | None = None,
    a_low: float | None = None,
    m_up: float | None = None,
) -> tuple[float, float, float, float, float]:
    """Fill in (beta, L, A, M) from the true function and return them with h_bar.

    A defaults to half the minimum of f over the h_bar window, M to twice the
    derivative sum at y, so that the Taylor coefficients lie well inside Theta.
    """
    beta = beta or f.beta_nominal or float(max(b, 1))
    lipschitz = lipschitz or 1.0
    h_bar = minimax_bandwidth(beta, lipschitz, n, center.size)
    a_low = a_low or 0.5 * f.lower_envelope(center, h_bar)
    m_up = m_up or 2.0 * f.derivative_sum(center, b)
    return beta, lipschitz, a_low, m_up, h_bar


def _resolve(spec: EstimatorSpec, f: FunctionSpec, center: np.ndarray, n: int) -> EstimatorSpec:
    if spec.kind == "parametric_f4":
        return spec.model_copy(
            update={"h": spec.h or F4_WINDOW, "h_max": spec.h_max or F4_H_MAX}
        )
    if spec.kind == "minimax":
        beta, lipschitz, a_low, m_up, _ = minimax_defaults(
            f, center, n, spec.b, spec.beta, spec.lipschitz, spec.a_low, spec.m_up
        )
        return spec.model_copy(
            update={"beta": beta, "lipschitz": lipschitz, "a_low": a_low, "m_up": m_up}
        )
    if spec.kind == "fixed" and spec.h is None:
        raise InputError("fixed-bandwidth estimator needs h")
    return spec


def _candidates(spec: EstimatorSpec, n: int, d: int, center: np.ndarray) -> tuple[float, ...]:
    if spec.h_candidates:
        return tuple(sorted(spec.h_candidates, reverse=True))
    if spec.kind == "oracle":
        return bandwidth_grid(n, spec.b, d, spec.h_max).bandwidths
    if spec.kind == "lse_baseline":
        return baseline_candidates(n, spec.b, d, center)
    return ()


def baseline_candidates(n: int, b: int, d: int, center: np.ndarray) -> tuple[float, ...]:
    """Bandwidths 2^(-j/2) h_top from the widest window that fits in [0,1]^d down
    to windows holding 2 D_b design points."""
    h_top = min(1.0, float(2 * np.minimum(center, 1 - center).min()))
    floor = 2 * expected_size(d, b)
    out = []
    j = 0
    while n * (h := h_top * 2 ** (-j / 2)) ** d >= floor:
        out.append(h)
        j += 1
    if not out:
        raise InputError(f"no admissible bandwidth at y={center.tolist()} for n={n}")
    return tuple(out)


def _collect(
    spec: EstimatorSpec,
    f: FunctionSpec,
    center: np.ndarray,
    n: int,
    reps: int,
    master_seed: int,
    workers: int,
    candidates: tuple[float, ...],
) -> tuple[list[_Outcome], list[_Outcome]]:
    if reps < 2:
        raise InputError(f"reps must be at least 2, got {reps}")
    grid = make_grid(center.size, n)
    truth = float(f(center[None, :])[0])
    outcomes: list[_Outcome] = Parallel(n_jobs=workers)(
        delayed(_run_rep)(spec, f, grid, center, truth, master_seed, rep, candidates)
        for rep in range(reps)
    )
    failed = [o for o in outcomes if o.failure is not None]
    for o in failed[:5]:
        logger.warning("replication_failed", rep=o.rep, reason=o.failure)
    if len(failed) > MAX_FAILURE_FRACTION * reps:
        raise TooManyFailures(
            f"{len(failed)} of {reps} replications failed for {f.id}, n={n}, "
            f"y={center.tolist()} (first: {failed[0].failure})"
        )
    return [o for o in outcomes if o.failure is None], failed


def _mean_se(values: np.ndarray) -> tuple[float, float]:
    return float(values.mean()), float(values.std(ddof=1) / math.sqrt(values.size))


def _curve(ladder: np.ndarray, bandwidths: tuple[float, ...]) -> list[CandidateRisk]:
    se = ladder.std(axis=0, ddof=1) / math.sqrt(ladder.shape[0])
    return [
        CandidateRisk(h=h, risk=float(r), standard_error=float(s))
        for h, r, s in zip(bandwidths, ladder.mean(axis=0), se, strict=True)
    ]


def _oracle_pick(curve: list[CandidateRisk]) -> CandidateRisk:
    """Smallest risk; ties go to the larger bandwidth."""
    best = min(c.risk for c in curve)
    return max((c for c in curve if c.risk == best), key=lambda c: c.h)


def _as_point(y: np.ndarray | float | list[float], d: int) -> np.ndarray:
    center = np.atleast_1d(np.asarray(y, dtype=np.float64))
    if center.size == 1 and d > 1:
        center = np.full(d, center[0])
    return center


def mc_risk(
    spec: EstimatorSpec,
    f: FunctionSpec | str,
    y: np.ndarray | float | list[float],
    n: int,
    reps: int,
    master_seed: int,
    d: int = 1,
    workers: int = 1,
) -> RiskReport:
    fn = test_function(f) if isinstance(f, str) else f
    center = _as_point(y, d)
    spec = _resolve(spec, fn, center, n)
    candidates = _candidates(spec, n, d, center)
    kept, failed = _collect(spec, fn, center, n, reps, master_seed, workers, candidates)

    report: dict[str, object] = {
        "function_id": fn.id,
        "n": n,
        "d": d,
        "y": center.tolist(),
        "reps": reps,
        "estimator": spec.kind,
        "failed": len(failed),
    }
    if spec.kind in ("oracle", "lse_baseline"):
        curve = _curve(np.stack([o.ladder for o in kept if o.ladder is not None]), candidates)
        pick = _oracle_pick(curve)
        report |= {
            "risk": pick.risk,
            "standard_error": pick.standard_error,
            "h_oracle": pick.h,
            "candidates": curve,
        }
    else:
        risk, se = _mean_se(np.array([o.error for o in kept]))
        report |= {"risk": risk, "standard_error": se}
    if spec.kind == "adaptive":
        scales = bandwidth_grid(n, spec.b, d, spec.h_max).bandwidths
        curve = _curve(np.stack([o.ladder for o in kept if o.ladder is not None]), scales)
        chosen = np.array([o.selected_h for o in kept], dtype=np.float64)
        values, counts = np.unique(chosen, return_counts=True)
        report |= {
            "candidates": curve,
            "h_oracle": _oracle_pick(curve).h,
            "bandwidth_mean": float(chosen.mean()),
            "bandwidth_histogram": [
                BandwidthCount(h=float(v), count=int(c))
                for v, c in zip(values, counts, strict=True)
            ],
            "fallback_scales": sum(o.fallbacks for o in kept),
        }

    result = RiskReport.model_validate(report)
    logger.info(
        "mc_risk_finished",
        fn=fn.id,
        estimator=spec.kind,
        n=n,
        y=result.y,
        risk=result.risk,
        failed=result.failed,
    )
    return result


def risk_curve(
    f: FunctionSpec | str,
    y: np.ndarray | float,
    n: int,
    h_candidates: tuple[float, ...],
    reps: int,
    seed: int,
    b: int = SIMULATION_DEGREE,
    integrator: IntegratorConfig | None = None,
    workers: int = 1,
) -> list[CandidateRisk]:
    spec = EstimatorSpec(
        kind="oracle", b=b, h_candidates=h_candidates, integrator=integrator or IntegratorConfig()
    )
    report = mc_risk(spec, f, y, n, reps, seed, workers=workers)
    assert report.candidates is not None
    return report.candidates


def oracle_bandwidth(
    f: FunctionSpec | str,
    y: np.ndarray | float,
    n: int,
    h_candidates: tuple[float, ...],
    reps: int,
    seed: int,
    b: int = SIMULATION_DEGREE,
    integrator: IntegratorConfig | None = None,
    workers: int = 1,
) -> float:
    """h_tilde = argmin over the candidates of E|f_hat^h(y) - f(y)|."""
    if not h_candidates:
        raise InputError("oracle bandwidth needs at least one candidate")
    return _oracle_pick(risk_curve(f, y, n, h_candidates, reps, seed, b, integrator, workers)).h


def evaluation_points(n_points: int, h_max: float) -> np.ndarray:
    """j / (n_points + 1), j = 1..n_points, keeping those whose h_max window fits in [0, 1]."""
    points = np.arange(1, n_points + 1) / (n_points + 1)
    keep = (points - h_max / 2 >= -1e-12) & (points + h_max / 2 <= 1 + 1e-12)
    return points[keep]


class PlotSeries(BaseModel):
    name: str
    x: list[float]
    y: list[float]


class TableRow(BaseModel):
    function_id: str
    n: int
    points: int
    adaptive_risk: float
    adaptive_se: float
    oracle_risk: float
    ratio: float
    failed: int
    fallback_scales: int


class RiskTable(BaseModel):
    reps: int
    seed: int
    mode: ThresholdMode
    c_thr: float
    rows: list[TableRow]
    ratio_vs_n: list[PlotSeries]


def replicate_risk_table(
    reps: int,
    mode: ThresholdMode = "practical",
    c_thr: float = DEFAULT_C_THR,
    seed: int = 0,
    functions: tuple[str, ...] = ("f1", "f2", "f3"),
    ns: tuple[int, ...] = (100, 1000),
    n_points: int = 100,
    b: int = SIMULATION_DEGREE,
    q: float = 1.0,
    integrator: IntegratorConfig | None = None,
    workers: int = 1,
) -> RiskTable:
    """Adaptive risk and oracle/adaptive ratio averaged over interior points.

    At each point one ladder run per replication serves both estimators: the
    oracle is the best single scale of the same ladder. The reported standard
    error is the mean of the per-point standard errors.
    """
    spec = EstimatorSpec(
        kind="adaptive",
        b=b,
        q=q,
        mode=mode,
        c_thr=c_thr,
        integrator=integrator or IntegratorConfig(),
    )
    rows = []
    for fid in functions:
        fn = test_function(fid)
        for n in ns:
            points = evaluation_points(n_points, default_h_max(n, b, 1))
            reports = [mc_risk(spec, fn, y, n, reps, seed, workers=workers) for y in points]
            adaptive = np.array([r.risk for r in reports])
            oracle = np.array([r.oracle_risk for r in reports])
            positive = adaptive > 0
            ratios = oracle[positive] / adaptive[positive]
            rows.append(
                TableRow(
                    function_id=fn.id,
                    n=n,
                    points=len(reports),
                    adaptive_risk=float(adaptive.mean()),
                    adaptive_se=float(np.mean([r.standard_error for r in reports])),
                    oracle_risk=float(oracle.mean()),
                    ratio=float(ratios.mean()) if ratios.size else 1.0,
                    failed=sum(r.failed for r in reports),
                    fallback_scales=sum(r.fallback_scales for r in reports),
                )
            )
            row = rows[-1]
            logger.info("table_row", fn=fn.id, n=n, risk=row.adaptive_risk, ratio=row.ratio)

    ratio_vs_n = [
        PlotSeries(
            name=fid,
            x=[float(r.n) for r in rows if r.function_id == fid],
            y=[r.ratio for r in rows if r.function_id == fid],
        )
        for fid in dict.fromkeys(r.function_id for r in rows)
    ]
    return RiskTable(reps=reps, seed=seed, mode=mode, c_thr=c_thr, rows=rows, ratio_vs_n=ratio_vs_n)


class F4Report(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    n: int
    reps: int
    seed: int
    h_star: float
    parametric: RiskReport
    adaptive: RiskReport
    ratio: float
    mean_selected_width: float
    mean_selected_radius: float
    shape: PlotSeries
    bandwidth_histogram: PlotSeries


def replicate_f4(
    reps: int,
    seed: int = 0,
    n: int = 1000,
    b: int = SIMULATION_DEGREE,
    q: float = 1.0,
    mode: ThresholdMode = "practical",
    c_thr: float = DEFAULT_C_THR,
    integrator: IntegratorConfig | None = None,
    workers: int = 1,
) -> F4Report:
    """Parametric window of width 1/8 against the adaptive ladder at y = 1/2.

    f4 is linear on [3/8, 5/8], a neighbourhood of radius h_star = 1/8 around
    the point, so the selected bandwidth is compared with h_star as a radius.
    Both the width and the radius are reported.
    """
    f4 = test_function("f4")
    integrator = integrator or IntegratorConfig()
    base = EstimatorSpec(b=b, q=q, mode=mode, c_thr=c_thr, integrator=integrator)
    parametric = mc_risk(
        base.model_copy(update={"kind": "parametric_f4"}),
        f4,
        F4_POINT,
        n,
        reps,
        seed,
        workers=workers,
    )
    adaptive = mc_risk(
        base.model_copy(update={"kind": "adaptive", "h_max": F4_H_MAX}),
        f4,
        F4_POINT,
        n,
        reps,
        seed,
        workers=workers,
    )
    assert adaptive.bandwidth_mean is not None and adaptive.bandwidth_histogram is not None
    x = np.linspace(0.0, 1.0, 201)
    return F4Report(
        n=n,
        reps=reps,
        seed=seed,
        h_star=F4_H_STAR,
        parametric=parametric,
        adaptive=adaptive,
        ratio=adaptive.risk / parametric.risk if parametric.risk > 0 else math.inf,
        mean_selected_width=adaptive.bandwidth_mean,
        mean_selected_radius=adaptive.bandwidth_mean / 2,
        shape=PlotSeries(name="f4", x=x.tolist(), y=f4(x).tolist()),
        bandwidth_histogram=PlotSeries(
            name="selected_bandwidth",
            x=[c.h for c in adaptive.bandwidth_histogram],
            y=[float(c.count) for c in adaptive.bandwidth_histogram],
        ),
    )


def minimax_rate(beta: float, n: int, d: int) -> float:
    """phi_n(beta) = n^(-beta / (beta + d))."""
    return float(n ** (-beta / (beta + d)))


def adaptive_rate(beta: float, n: int, b: int, d: int) -> tuple[float, float]:
    """Adaptive normalization (rho / n)^(beta / (beta + d)) and its log factor rho.

    rho = 1 + ln(phi_n(beta) / phi_n(b)) is the price paid for not knowing beta.
    """
    if not 0 < beta <= b:
        raise InputError(f"adaptive rate needs 0 < beta <= b, got beta={beta}, b={b}")
    rho = 1.0 + math.log(minimax_rate(beta, n, d) / minimax_rate(b, n, d))
    return float((rho / n) ** (beta / (beta + d))), rho


class RateFit(BaseModel):
    function_id: str
    beta_nominal: float
    d: int
    ns: list[int]
    risks: list[float]
    slope: float
    target: float
    baseline_risks: list[float]
    baseline_slope: float
    baseline_target: float
    minimax_rates: list[float]
    adaptive_rates: list[float]


def _log_slope(ns: list[int], risks: list[float]) -> float:
    return float(np.polyfit(np.log(ns), np.log(risks), 1)[0])


def rate_slope(
    f: FunctionSpec | str,
    beta_nominal: float,
    ns: tuple[int, ...],
    reps: int,
    seed: int,
    y: float = 0.5,
    d: int = 1,
    b: int = SIMULATION_DEGREE,
    integrator: IntegratorConfig | None = None,
    workers: int = 1,
) -> RateFit:
    """Slopes of log oracle risk against log n, for the bayes estimator and for
    local least squares, both at their own oracle bandwidths."""
    if len(ns) < 3 or list(ns) != sorted(set(ns)):
        raise InputError(f"rate fit needs at least three increasing sample sizes, got {ns}")
    fn = test_function(f) if isinstance(f, str) else f
    center = _as_point(y, d)
    integrator = integrator or IntegratorConfig()

    risks: list[float] = []
    baseline: list[float] = []
    for n in ns:
        bayes = EstimatorSpec(
            kind="oracle",
            b=b,
            h_candidates=baseline_candidates(n, b, d, center),
            integrator=integrator,
        )
        lse = bayes.model_copy(update={"kind": "lse_baseline"})
        risks.append(mc_risk(bayes, fn, center, n, reps, seed, d=d, workers=workers).risk)
        baseline.append(mc_risk(lse, fn, center, n, reps, seed, d=d, workers=workers).risk)

    fit = RateFit(
        function_id=fn.id,
        beta_nominal=beta_nominal,
        d=d,
        ns=list(ns),
        risks=risks,
        slope=_log_slope(list(ns), risks),
        target=-beta_nominal / (beta_nominal + d),
        baseline_risks=baseline,
        baseline_slope=_log_slope(list(ns), baseline),
        baseline_target=-beta_nominal / (2 * beta_nominal + d),
        minimax_rates=[minimax_rate(beta_nominal, n, d) for n in ns],
        adaptive_rates=[adaptive_rate(min(beta_nominal, b), n, b, d)[0] for n in ns],
    )
    logger.info("rate_fit", fn=fn.id, slope=fit.slope, baseline_slope=fit.baseline_slope)
    return fit


class TailCurve(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    function_id: str
    n: int
    h: float
    reps: int
    failed: int
    eps: list[float]
    probabilities: list[float]
    slope: float
    intercept: float
    r_squared: float
    fit_points: int


def default_eps_grid() -> tuple[float, ...]:
    return tuple(np.linspace(0.0, 15.0, 61).tolist())


def tail_decay_check(
    f: FunctionSpec | str,
    n: int,
    h: float,
    eps_grid: tuple[float, ...] | None,
    reps: int,
    seed: int,
    y: float = 0.5,
    d: int = 1,
    b: int = SIMULATION_DEGREE,
    integrator: IntegratorConfig | None = None,
    workers: int = 1,
) -> TailCurve:
    """Empirical P(n h^d |f_hat^h(y) - f(y)| >= eps) with a log-linear fit.

    The fit uses the eps values whose probability lies in [0.01, 0.9].
    """
    eps = np.asarray(eps_grid or default_eps_grid(), dtype=np.float64)
    if eps.size < 2 or np.any(np.diff(eps) <= 0):
        raise InputError("eps_grid must be strictly increasing with at least two values")
    fn = test_function(f) if isinstance(f, str) else f
    center = _as_point(y, d)
    spec = EstimatorSpec(kind="fixed", h=h, b=b, integrator=integrator or IntegratorConfig())
    kept, failed = _collect(spec, fn, center, n, reps, seed, workers, ())

    deviation = n * h**d * np.array([o.error for o in kept])
    probabilities = (deviation[None, :] >= eps[:, None]).mean(axis=1)
    lo, hi = TAIL_FIT_RANGE
    mid = (probabilities >= lo) & (probabilities <= hi)
    if mid.sum() >= 3:
        fit = stats.linregress(eps[mid], np.log(probabilities[mid]))
        slope, intercept, r_squared = float(fit.slope), float(fit.intercept), float(fit.rvalue**2)
    else:
        slope = intercept = r_squared = math.nan
    return TailCurve(
        function_id=fn.id,
        n=n,
        h=h,
        reps=reps,
        failed=len(failed),
        eps=eps.tolist(),
        probabilities=probabilities.tolist(),
        slope=slope,
        intercept=intercept,
        r_squared=r_squared,
        fit_points=int(mid.sum()),
    )


class CurvePoint(BaseModel):
    y: float
    truth: float
    estimate: float
    h: float


class EstimationCurve(BaseModel):
    function_id: str
    n: int
    seed: int
    points: list[CurvePoint]
    failed: int


def estimation_curve(
    f: FunctionSpec | str,
    n: int,
    seed: int,
    n_points: int = 100,
    b: int = SIMULATION_DEGREE,
    q: float = 1.0,
    mode: ThresholdMode = "practical",
    c_thr: float = DEFAULT_C_THR,
    integrator: IntegratorConfig | None = None,
) -> EstimationCurve:
    """One sample, adaptive estimates across the interior evaluation points."""
    fn = test_function(f) if isinstance(f, str) else f
    sample = simulate(fn, make_grid(1, n), seed)
    points, failed = [], 0
    for y in evaluation_points(n_points, default_h_max(n, b, 1)):
        try:
            f_hat, trace = adaptive_estimate(sample, y, b, q, integrator, mode, c_thr)
        except EstimationError as exc:
            logger.warning("curve_point_failed", y=float(y), reason=str(exc))
            failed += 1
            continue
        points.append(
            CurvePoint(y=float(y), truth=float(fn(y)[0]), estimate=f_hat, h=trace.selected_h)
        )
    return EstimationCurve(function_id=fn.id, n=n, seed=seed, points=points, failed=failed)
