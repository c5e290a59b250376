import math

import numpy as np
import pytest

import mulreg.experiments as experiments
from mulreg.bayes import minimax_estimate
from mulreg.config import IntegratorConfig
from mulreg.errors import InputError, NonConvergence, TooManyFailures
from mulreg.experiments import (
    EstimatorSpec,
    adaptive_rate,
    baseline_candidates,
    default_eps_grid,
    estimation_curve,
    evaluation_points,
    mc_risk,
    minimax_defaults,
    minimax_rate,
    oracle_bandwidth,
    rate_slope,
    replicate_f4,
    replicate_risk_table,
    tail_decay_check,
)
from mulreg.functions import test_function
from mulreg.model import make_grid, simulate

FAST = IntegratorConfig(nodes_per_axis=24)


class TestRates:
    def test_minimax_rate(self):
        assert minimax_rate(2.0, 1000, 1) == pytest.approx(0.01)

    def test_adaptive_rate(self):
        rate, rho = adaptive_rate(1.0, 1000, 2, 1)
        assert rho == pytest.approx(1 + math.log(1000) / 6, rel=1e-12)
        assert rho == pytest.approx(2.1513, abs=1e-4)
        assert rate == pytest.approx(math.sqrt(rho / 1000))

    def test_no_log_price_at_the_top(self):
        _, rho = adaptive_rate(2.0, 1000, 2, 1)
        assert rho == pytest.approx(1.0)

    @pytest.mark.parametrize("beta", [0.0, 2.5])
    def test_adaptive_rate_range(self, beta):
        with pytest.raises(InputError):
            adaptive_rate(beta, 1000, 2, 1)


class TestEvaluationPoints:
    def test_interior_points(self):
        points = evaluation_points(100, 100 ** (-1 / 3))
        assert points.size == 80
        assert points[0] == pytest.approx(11 / 101)
        assert points[-1] == pytest.approx(90 / 101)

    def test_small_window_keeps_all(self):
        assert evaluation_points(9, 0.01).size == 9


class TestBaselineCandidates:
    def test_count(self):
        candidates = baseline_candidates(100, 2, 1, np.array([0.5]))
        assert len(candidates) == 9
        assert candidates[0] == 1.0
        assert 100 * candidates[-1] >= 6

    def test_limited_by_the_boundary(self):
        assert baseline_candidates(1000, 2, 1, np.array([0.2]))[0] == pytest.approx(0.4)


class TestMinimaxDefaults:
    def test_f1(self):
        beta, L, a_low, m_up, h_bar = minimax_defaults(
            test_function("f1"), np.array([0.5]), 1000, 2
        )
        assert (beta, L) == (2.0, 1.0)
        assert h_bar == pytest.approx(0.1)
        assert a_low == pytest.approx(0.5)
        assert m_up == pytest.approx(2 * (1 + 4 * math.pi**2))


class TestMonteCarlo:
    def test_deterministic(self):
        spec = EstimatorSpec(kind="fixed", h=0.2, integrator=FAST)
        first = mc_risk(spec, "f1", 0.5, 100, 4, master_seed=3)
        second = mc_risk(spec, "f1", 0.5, 100, 4, master_seed=3)
        assert first == second

    def test_seed_changes_result(self):
        spec = EstimatorSpec(kind="fixed", h=0.2, integrator=FAST)
        first = mc_risk(spec, "f1", 0.5, 100, 4, 3)
        assert first.risk != mc_risk(spec, "f1", 0.5, 100, 4, 4).risk

    def test_workers_do_not_change_result(self):
        spec = EstimatorSpec(kind="fixed", h=0.2, integrator=FAST)
        serial = mc_risk(spec, "f1", 0.5, 100, 4, 3, workers=1)
        parallel = mc_risk(spec, "f1", 0.5, 100, 4, 3, workers=2)
        assert serial.risk == parallel.risk
        assert serial.standard_error == parallel.standard_error

    def test_needs_two_replications(self):
        with pytest.raises(InputError):
            mc_risk(EstimatorSpec(kind="fixed", h=0.2), "f1", 0.5, 100, 1, 0)

    def test_fixed_needs_bandwidth(self):
        with pytest.raises(InputError):
            mc_risk(EstimatorSpec(kind="fixed"), "f1", 0.5, 100, 2, 0)

    def test_too_many_failures(self, monkeypatch):
        def fail(*args, **kwargs):
            raise NonConvergence("stalled")

        monkeypatch.setattr(experiments, "fixed_bandwidth_estimate", fail)
        with pytest.raises(TooManyFailures):
            mc_risk(EstimatorSpec(kind="fixed", h=0.2), "f1", 0.5, 100, 5, 0)

    def test_noise_free_constant(self):
        spec = EstimatorSpec(kind="fixed", b=0, h=0.5, h_max=0.5, noise="none")
        report = mc_risk(spec, "constant(2)", 0.5, 100, 3, 0)
        assert report.risk < 0.05
        assert report.standard_error == pytest.approx(0.0, abs=1e-12)
        assert report.failed == 0

    def test_adaptive_report(self):
        spec = EstimatorSpec(kind="adaptive", integrator=FAST)
        report = mc_risk(spec, "f1", 0.5, 100, 3, 0)
        assert report.estimator == "adaptive"
        assert len(report.candidates) == 3
        assert report.oracle_risk <= max(c.risk for c in report.candidates)
        assert sum(c.count for c in report.bandwidth_histogram) == 3 - report.failed
        assert report.h_oracle in {c.h for c in report.candidates}

    def test_minimax_kind(self):
        spec = EstimatorSpec(kind="minimax", integrator=FAST)
        report = mc_risk(spec, "f1", 0.5, 1000, 2, 0)
        assert math.isfinite(report.risk)

    def test_lse_baseline(self):
        report = mc_risk(EstimatorSpec(kind="lse_baseline"), "f1", 0.5, 100, 5, 0)
        assert report.h_oracle in {c.h for c in report.candidates}
        assert report.risk == min(c.risk for c in report.candidates)


class TestOracle:
    def test_prefers_wide_window_for_a_constant(self):
        h = oracle_bandwidth("constant(2)", 0.5, 100, (0.1, 0.2, 0.4), 20, 0, integrator=FAST)
        assert h == 0.4

    def test_needs_candidates(self):
        with pytest.raises(InputError):
            oracle_bandwidth("f1", 0.5, 100, (), 4, 0)

    def test_candidate_curve(self):
        spec = EstimatorSpec(kind="oracle", h_candidates=(0.1, 0.2), integrator=FAST)
        report = mc_risk(spec, "f1", 0.5, 100, 3, 0)
        assert [c.h for c in report.candidates] == [0.2, 0.1]
        assert report.risk == min(c.risk for c in report.candidates)


class TestExperiments:
    def test_tiny_risk_table(self):
        table = replicate_risk_table(
            reps=2, functions=("f1",), ns=(100,), n_points=3, integrator=FAST
        )
        assert len(table.rows) == 1
        row = table.rows[0]
        assert (row.function_id, row.n, row.points) == ("f1", 100, 3)
        assert row.adaptive_risk >= 0 and row.ratio > 0
        assert table.ratio_vs_n[0].name == "f1"
        assert table.ratio_vs_n[0].x == [100.0]

    def test_tail_curve(self):
        curve = tail_decay_check("f1", 100, 0.2, None, 6, 0, integrator=FAST)
        assert curve.eps == list(default_eps_grid())
        assert curve.probabilities[0] == 1.0
        probs = curve.probabilities
        assert all(a >= b for a, b in zip(probs, probs[1:], strict=False))

    def test_tail_rejects_unsorted_grid(self):
        with pytest.raises(InputError):
            tail_decay_check("f1", 100, 0.2, (1.0, 0.5), 4, 0)

    def test_rate_needs_three_sizes(self):
        with pytest.raises(InputError):
            rate_slope("f1", 2.0, (100, 1000), 4, 0)

    def test_simulation_defaults(self):
        assert EstimatorSpec().b == 1
        assert experiments.F4_WINDOW == pytest.approx(0.125)
        lo, hi = 0.5 - experiments.F4_WINDOW / 2, 0.5 + experiments.F4_WINDOW / 2
        assert 3 / 8 <= lo and hi <= 5 / 8

    def test_tiny_curve(self):
        curve = estimation_curve("f1", 100, 0, n_points=3, integrator=FAST)
        assert len(curve.points) + curve.failed == 3
        for p in curve.points:
            assert p.truth == pytest.approx(np.cos(2 * np.pi * p.y) + 2)


@pytest.mark.slow
class TestAcceptance:
    def test_risk_table(self):
        table = replicate_risk_table(reps=200, functions=("f1", "f2"), ns=(100,), n_points=20)
        rows = {row.function_id: row for row in table.rows}
        assert 0.08 <= rows["f1"].adaptive_risk <= 0.20
        assert 0.55 <= rows["f1"].ratio <= 1.0
        assert 0.18 <= rows["f2"].adaptive_risk <= 0.45
        for row in table.rows:
            assert row.failed <= 0.1 * 200 * row.points

    def test_f4_report(self):
        report = replicate_f4(reps=300)
        assert report.h_star == 0.125
        assert 0.012 <= report.parametric.risk <= 0.032
        assert report.adaptive.risk <= 2 * report.parametric.risk
        assert 0.11 <= report.mean_selected_radius <= 0.18
        assert report.mean_selected_radius >= report.h_star

    def test_rate_slope(self):
        fit = rate_slope("f1", 2.0, (100, 400, 1600), 200, 0)
        assert fit.slope <= -0.55
        assert fit.baseline_slope >= fit.slope + 0.1

    def test_tail_is_exponential(self):
        curve = tail_decay_check("constant(2)", 400, 0.25, None, 400, 0)
        assert curve.fit_points >= 3
        assert curve.slope < 0
        assert curve.r_squared > 0.9

    def test_minimax_on_a_constant(self):
        f = test_function("constant(2)")
        errors = []
        for rep in range(200):
            sample = simulate(f, make_grid(1, 400), 0, rep)
            est = minimax_estimate(sample, 0.5, 2.0, 1.0, 1.0, 3.0, 2, IntegratorConfig())
            errors.append(abs(est.f_hat_y - 2.0))
        assert np.mean(np.array(errors) < 0.2) >= 0.95
