import math

import numpy as np
import pytest

import mulreg.lepski as lepski
from mulreg.errors import DegenerateGrid, EmptyPosteriorSupport, InputError, InvalidBounds
from mulreg.functions import test_function
from mulreg.lepski import (
    SelectionTrace,
    adaptive_estimate,
    bandwidth_grid,
    fixed_bandwidth_estimate,
    plug_in_param_set,
    random_param_set,
    select,
    theory_constant,
    threshold,
)
from mulreg.local_poly import multi_indices
from mulreg.model import make_grid, simulate


class TestBandwidthGrid:
    def test_n100(self):
        grid = bandwidth_grid(100, 2, 1)
        assert grid.h_max == pytest.approx(0.2154, abs=1e-4)
        assert grid.h_min == pytest.approx(0.0277, abs=1e-4)
        assert grid.k_n == 2
        assert len(grid) == 3

    def test_n1000(self):
        grid = bandwidth_grid(1000, 2, 1)
        assert grid.h_max == pytest.approx(0.1)
        assert grid.h_min == pytest.approx(0.003627, abs=1e-6)
        assert grid.k_n == 4
        np.testing.assert_allclose(grid.bandwidths, 0.1 / 2 ** np.arange(5))

    def test_dyadic_and_bounded(self):
        grid = bandwidth_grid(10000, 2, 1, h_max=0.3)
        ratios = np.array(grid.bandwidths[:-1]) / np.array(grid.bandwidths[1:])
        np.testing.assert_allclose(ratios, 2.0)
        assert min(grid.bandwidths) >= grid.h_min
        assert all(10000 * h >= 3 for h in grid.bandwidths)

    def test_degenerate(self):
        with pytest.raises(DegenerateGrid):
            bandwidth_grid(4, 2, 1)

    def test_bad_h_max(self):
        with pytest.raises(InputError):
            bandwidth_grid(100, 2, 1, h_max=1.5)


class TestThreshold:
    def test_theory_constant(self):
        assert theory_constant(3, 1.0, 1) == 559872.0

    def test_practical(self):
        value = threshold(2, 1000, 1, 1.0, 0.5, 0.025, 3, c_thr=2.0)
        assert value == pytest.approx(2.0 / 0.5 * (1 + 2 * math.log(2)) / 25.0)

    def test_theory(self):
        value = threshold(2, 1000, 1, 1.0, 0.5, 0.025, 3, mode="theory")
        assert value == pytest.approx(559872.0 / 0.5 * (1 + 2 * math.log(2)) / 25.0)

    def test_grows_along_the_ladder(self):
        values = [threshold(k, 1000, 1, 1.0, 0.005, 0.1 / 2**k, 3) for k in range(5)]
        assert all(a < b for a, b in zip(values, values[1:], strict=False))

    def test_calibrated_constant_on_the_f4_ladder(self):
        # widths 0.5, 0.25, 0.125 of a local line at n=1000 with lambda = 1/12;
        # the widest window sits 0.05 above the truth, the others are unbiased
        limits = [threshold(k, 1000, 1, 1.0, 1 / 12, 0.5 / 2**k, 2) for k in range(3)]
        assert limits[1] == pytest.approx(0.12 * 12 * (1 + math.log(2)) / 250)
        k_hat, _ = select([2.05, 2.005, 1.99], limits, m_hat=3.2)
        assert k_hat == 1

    def test_rejects_singular(self):
        with pytest.raises(InputError):
            threshold(0, 100, 1, 1.0, 0.0, 0.2, 3)


class TestRandomSet:
    def test_bounds(self):
        pset = random_param_set(2.0, 3.0, multi_indices(1, 2))
        assert (pset.A_low, pset.M_up) == (1.0, 12.0)

    def test_rejects_non_positive(self):
        with pytest.raises(InvalidBounds):
            random_param_set(0.0, 3.0, multi_indices(1, 2))

    def test_plug_in_recovers_level(self):
        sample = simulate(test_function("constant(2)"), make_grid(1, 10000), 8)
        pset, a_hat, m_hat = plug_in_param_set(sample, 0.5, 2, 0.2)
        assert a_hat == pytest.approx(2.0, abs=0.15)
        assert m_hat >= a_hat
        assert pset.A_low == pytest.approx(a_hat / 2)

    def test_m_hat_concentrates_for_local_lines(self):
        # for a constant the derivative sum is the level itself
        f = test_function("constant(2)")
        m_hats = [
            plug_in_param_set(simulate(f, make_grid(1, 10000), seed), 0.5, 1, 0.5)[2]
            for seed in range(5)
        ]
        assert np.mean(np.abs(np.array(m_hats) - 2.0)) <= 0.2


class TestSelect:
    def test_coarsest_accepted(self):
        k_hat, comparisons = select([1.0, 1.25, 1.75], [0.0, 0.5, 1.0])
        assert k_hat == 0
        assert [(c.k, c.l) for c in comparisons] == [(0, 1), (0, 2), (1, 2)]
        assert all(c.passed for c in comparisons)

    def test_m_hat_scales_thresholds(self):
        k_hat, comparisons = select([1.0, 1.25, 1.75], [0.0, 0.5, 1.0], m_hat=0.5)
        assert k_hat == 1
        assert [c.passed for c in comparisons] == [True, False, True]

    def test_finest_scale_always_passes(self):
        k_hat, _ = select([1.0, 2.0, 4.0], [0.0, 0.0, 0.0])
        assert k_hat == 2

    def test_infinite_threshold_passes(self):
        k_hat, _ = select([1.0, 9.0], [0.0, math.inf])
        assert k_hat == 0

    def test_monotone_in_threshold_scale(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            values = rng.normal(size=6)
            limits = rng.random(6)
            picks = [select(values, limits, m)[0] for m in (0.25, 0.5, 1.0, 2.0, 4.0)]
            assert picks == sorted(picks, reverse=True)

    def test_length_mismatch(self):
        with pytest.raises(InputError):
            select([1.0, 2.0], [0.1])


class TestAdaptiveEstimate:
    def test_trace_is_consistent(self, f1_sample, fast_cfg):
        f_hat, trace = adaptive_estimate(f1_sample, 0.5, cfg=fast_cfg)
        assert f_hat == trace.f_hat == trace.estimates[trace.k_hat].f_hat
        assert trace.replay() == trace.k_hat
        assert len(trace.estimates) == 3
        assert len(trace.comparisons) == 3
        assert [e.h for e in trace.estimates] == list(bandwidth_grid(100, 2, 1).bandwidths)
        assert trace.selected_h == trace.estimates[trace.k_hat].h

    def test_deterministic(self, f1_sample, fast_cfg):
        _, first = adaptive_estimate(f1_sample, 0.5, cfg=fast_cfg)
        _, second = adaptive_estimate(f1_sample, 0.5, cfg=fast_cfg)
        assert first == second

    def test_trace_json_round_trip(self, f1_sample, fast_cfg):
        _, trace = adaptive_estimate(f1_sample, 0.5, cfg=fast_cfg)
        restored = SelectionTrace.model_validate_json(trace.model_dump_json())
        assert restored == trace
        assert restored.replay() == trace.k_hat

    def test_theory_mode_keeps_the_widest_window(self, f1_sample, fast_cfg):
        _, trace = adaptive_estimate(f1_sample, 0.5, cfg=fast_cfg, mode="theory")
        assert trace.k_hat == 0

    def test_estimates_stay_within_the_parameter_set(self, f1_sample, fast_cfg):
        _, trace = adaptive_estimate(f1_sample, 0.4, cfg=fast_cfg)
        for e in trace.estimates:
            assert trace.a_hat / 2 - 1e-9 <= e.f_hat <= 4 * trace.m_hat + 1e-9

    def test_fallback_to_window_maximum(self, f1_sample, fast_cfg, monkeypatch):
        def empty(*args, **kwargs):
            raise EmptyPosteriorSupport("no support")

        monkeypatch.setattr(lepski, "bayes_estimate", empty)
        _, trace = adaptive_estimate(f1_sample, 0.5, cfg=fast_cfg)
        assert trace.fallback_count == len(trace.estimates)
        assert all(e.fallback and e.f_hat > 0 for e in trace.estimates)

    def test_fixed_bandwidth(self, f1_sample, fast_cfg):
        est = fixed_bandwidth_estimate(f1_sample, 0.5, 0.2, cfg=fast_cfg)
        assert est.theta_hat.idxset.size == 3
        assert est.f_hat_y == pytest.approx(1.0, abs=0.5)


@pytest.mark.slow
class TestAdaptiveAccuracy:
    def test_error_shrinks_with_n(self):
        errors = {}
        for n in (100, 1000):
            f = test_function("f1")
            values = [
                abs(adaptive_estimate(simulate(f, make_grid(1, n), 0, rep), 0.5)[0] - 1.0)
                for rep in range(30)
            ]
            errors[n] = float(np.mean(values))
        assert errors[1000] < errors[100]
