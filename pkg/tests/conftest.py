import numpy as np
import pytest

from mulreg.config import IntegratorConfig
from mulreg.functions import test_function
from mulreg.local_poly import WindowData, multi_indices
from mulreg.model import make_grid, simulate


@pytest.fixture
def fast_cfg() -> IntegratorConfig:
    """Coarse quadrature: enough for structural checks, quick on D_b = 3."""
    return IntegratorConfig(nodes_per_axis=24)


@pytest.fixture
def f1_sample():
    return simulate(test_function("f1"), make_grid(1, 100), seed=7)


@pytest.fixture
def make_window():
    """Build a window by hand, design points spread evenly over V_h(y)."""

    def build(obs, h=0.2, b=0, n=100, y=0.5) -> WindowData:
        obs = np.asarray(obs, dtype=np.float64)
        idxset = multi_indices(1, b)
        center = np.array([y])
        x = (y - h / 2 + h * (np.arange(obs.size) + 1) / obs.size).reshape(-1, 1)
        return WindowData(
            y=center,
            h=h,
            n=n,
            idxset=idxset,
            x=x,
            obs=obs,
            basis=idxset.basis((x - center) / h),
        )

    return build
