import math

import numpy as np
import pytest

from mulreg.errors import InputError, UnknownFunctionId
from mulreg.functions import (
    F4_LINEAR_REGION,
    F4_SLOPE,
    approximation_bias,
    holder_check,
    taylor_coefficients,
    test_function,
)
from mulreg.local_poly import multi_indices


class TestShippedFunctions:
    def test_f1(self):
        f = test_function("f1")
        np.testing.assert_allclose(f(np.array([0.0, 0.5, 1.0])), [3.0, 1.0, 3.0], atol=1e-12)

    def test_f2_steps(self):
        f = test_function("f2")
        np.testing.assert_array_equal(f(np.array([0.2, 1 / 3, 0.5, 2 / 3, 0.9])), [2, 2, 1, 1, 3])

    def test_f3_oscillates_around_f1(self):
        f1, f3 = test_function("f1"), test_function("f3")
        x = np.linspace(0, 1, 101)
        assert np.abs(f3(x) - f1(x)).max() <= 0.3 + 1e-12
        assert f3(x).min() > 0.0

    def test_f4_linear_region(self):
        f = test_function("f4")
        lo, hi = F4_LINEAR_REGION
        assert f(0.5)[0] == pytest.approx(2.0)
        assert f(lo)[0] == pytest.approx(1.8125)
        assert f(hi)[0] == pytest.approx(2.1875)
        x = np.linspace(lo, hi, 11)
        np.testing.assert_allclose(f.partial(x, (1,)), F4_SLOPE, atol=1e-12)
        np.testing.assert_allclose(f.partial(x, (2,)), 0.0, atol=1e-9)

    def test_f4_knots_take_the_linear_side(self):
        f = test_function("f4")
        knots = np.array(F4_LINEAR_REGION)
        np.testing.assert_array_equal(f.partial(knots, (1,)), [F4_SLOPE, F4_SLOPE])
        np.testing.assert_array_equal(f.partial(knots, (2,)), [0.0, 0.0])
        assert f.derivative_sum(5 / 8, 2) == pytest.approx(2.1875 + F4_SLOPE)
        omega = taylor_coefficients(f, 5 / 8, 0.1, multi_indices(1, 2))
        np.testing.assert_allclose(omega.values, [2.1875, 0.15, 0.0], atol=1e-12)

    def test_f4_outer_pieces_curve(self):
        f = test_function("f4")
        assert f.partial(np.array([0.7]), (2,))[0] != 0.0

    def test_f4_returns_to_level_two(self):
        f = test_function("f4")
        np.testing.assert_allclose(f(np.array([0.0, 1.0])), [2.0, 2.0])
        np.testing.assert_allclose(f.partial(np.array([0.0, 1.0]), (1,)), [0.0, 0.0], atol=1e-12)

    def test_acts_on_first_coordinate(self):
        f = test_function("f1")
        points = np.array([[0.5, 0.1], [0.5, 0.9]])
        np.testing.assert_allclose(f(points), [1.0, 1.0])
        assert f.partial(points, (0, 1)).tolist() == [0.0, 0.0]


class TestLookup:
    def test_constant(self):
        f = test_function("constant(2.5)")
        np.testing.assert_array_equal(f(np.array([0.1, 0.7])), [2.5, 2.5])
        assert f.id == "constant(2.5)"

    def test_case_and_spaces(self):
        assert test_function(" F1 ").id == "f1"

    @pytest.mark.parametrize("name", ["f9", "sin", "constant(x)"])
    def test_unknown(self, name):
        with pytest.raises(UnknownFunctionId):
            test_function(name)

    def test_non_positive_constant(self):
        with pytest.raises(InputError):
            test_function("constant(0)")

    def test_callable(self):
        f = test_function(lambda x: 1.0 + x, beta_nominal=1.0)
        assert f(0.25)[0] == pytest.approx(1.25)
        assert f.beta_nominal == 1.0


class TestTaylor:
    def test_f1_coefficients(self):
        omega = taylor_coefficients(test_function("f1"), 0.5, 0.2, multi_indices(1, 2))
        np.testing.assert_allclose(
            omega.values, [1.0, 0.0, 4 * math.pi**2 * 0.02], atol=1e-12
        )

    def test_bias_shrinks_with_bandwidth(self):
        f = test_function("f1")
        idxset = multi_indices(1, 2)
        assert approximation_bias(f, 0.5, 0.1, idxset) < 6e-3
        assert approximation_bias(f, 0.5, 0.05, idxset) < approximation_bias(f, 0.5, 0.1, idxset)

    def test_constant_has_no_bias(self):
        assert approximation_bias(test_function("constant(3)"), 0.4, 0.3, multi_indices(1, 2)) == 0


class TestEnvelopes:
    def test_lower_envelope(self):
        assert test_function("f1").lower_envelope(0.5, 0.2) == pytest.approx(1.0)

    def test_derivative_sum(self):
        f = test_function("f1")
        assert f.derivative_sum(0.5, 2) == pytest.approx(1 + 4 * math.pi**2)
        assert f.derivative_sum(0.5, 0) == pytest.approx(1.0)


class TestHolder:
    def test_f1_member(self):
        report = holder_check(test_function("f1"), beta=2, L=20, M=10)
        assert report.member
        assert report.remainder_constant == pytest.approx(2 * math.pi**2, rel=0.01)

    def test_f1_not_member_with_small_constant(self):
        assert not holder_check(test_function("f1"), beta=2, L=1, M=10).member
