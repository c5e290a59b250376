import numpy as np
import pytest

from mulreg.errors import InputError, NonCubicSampleSize
from mulreg.functions import FunctionSpec, test_function
from mulreg.model import integer_root, make_grid, make_rng, simulate


class TestIntegerRoot:
    @pytest.mark.parametrize(
        ("n", "d", "m"),
        [(100, 1, 100), (1000, 3, 10), (4096, 2, 64), (4096, 3, 16), (4, 2, 2)],
    )
    def test_exact_roots(self, n, d, m):
        assert integer_root(n, d) == m

    @pytest.mark.parametrize(("n", "d"), [(10, 2), (1000, 2), (1, 1), (2, 2)])
    def test_non_cubic(self, n, d):
        with pytest.raises(NonCubicSampleSize):
            integer_root(n, d)


class TestDesignGrid:
    def test_one_dimensional(self):
        grid = make_grid(1, 10)
        np.testing.assert_allclose(grid.points[:, 0], np.arange(1, 11) / 10)

    def test_lexicographic_order(self):
        grid = make_grid(2, 9)
        assert grid.points.shape == (9, 2)
        np.testing.assert_allclose(grid.points[0], [1 / 3, 1 / 3])
        np.testing.assert_allclose(grid.points[1], [1 / 3, 2 / 3])
        np.testing.assert_allclose(grid.points[3], [2 / 3, 1 / 3])
        np.testing.assert_allclose(grid.points[-1], [1.0, 1.0])

    def test_axis_index(self):
        grid = make_grid(1, 1000)
        np.testing.assert_array_equal(grid.axis_index(grid.points)[:, 0], np.arange(1, 1001))


class TestSimulate:
    def test_same_seed_same_sample(self):
        f = test_function("f1")
        a = simulate(f, make_grid(1, 100), 11, 3)
        b = simulate(f, make_grid(1, 100), 11, 3)
        np.testing.assert_array_equal(a.y_values, b.y_values)

    def test_streams_differ(self):
        f = test_function("f1")
        a = simulate(f, make_grid(1, 100), 11, 0)
        b = simulate(f, make_grid(1, 100), 11, 1)
        assert not np.array_equal(a.y_values, b.y_values)

    def test_observations_below_frontier(self):
        f = test_function("f3")
        sample = simulate(f, make_grid(1, 1000), 5)
        fx = f(sample.x)
        assert np.all(sample.y_values >= 0.0)
        assert np.all(sample.y_values <= fx)

    def test_noise_free_sits_on_frontier(self):
        f = test_function("f2")
        sample = simulate(f, make_grid(1, 100), 5, noise="none")
        np.testing.assert_array_equal(sample.y_values, f(sample.x))

    def test_uniform_noise_mean(self):
        sample = simulate(test_function("constant(2)"), make_grid(1, 10000), 1)
        assert sample.y_values.mean() == pytest.approx(1.0, abs=0.03)

    def test_negative_function_rejected(self):
        f = FunctionSpec(id="neg", func=lambda x: x - 0.5)
        with pytest.raises(InputError):
            simulate(f, make_grid(1, 100), 0)

    def test_provenance(self):
        sample = simulate(test_function("f1"), make_grid(2, 16), 9, 4)
        assert (sample.n, sample.d, sample.seed, sample.stream) == (16, 2, 9, (4,))
        assert sample.function_id == "f1"

    def test_rng_is_counter_based(self):
        a = make_rng(3, 1).random(5)
        b = make_rng(3, 1).random(5)
        np.testing.assert_array_equal(a, b)
        assert not np.array_equal(a, make_rng(3, 2).random(5))
