import math

import numpy as np
import pytest

from gstf import (ClassifyOptions, GSIndex, Gaussian, Grid1D, TFGrid,
                  build_grid, catalog_eval)


@pytest.fixture(scope="session")
def grid10():
    """1024-point symmetric grid on [-12, 12]."""
    return build_grid(12.0, 10)


@pytest.fixture(scope="session")
def grid11():
    """2048-point symmetric grid on [-12, 12]."""
    return build_grid(12.0, 11)


@pytest.fixture(scope="session")
def tf_small(grid10):
    """129 x 129 time-frequency grid with x-steps on function-grid multiples."""
    return TFGrid(Grid1D(0.0, 8 * grid10.step, 129), Grid1D(0.0, 0.25, 129))


@pytest.fixture(scope="session")
def tf_classify(grid11):
    """The wide time-frequency grid used for transform-side verdicts."""
    return TFGrid(Grid1D(0.0, 4 * grid11.step, 513), Grid1D(0.0, 0.5, 1001))


@pytest.fixture(scope="session")
def classify_opts():
    return ClassifyOptions(n_max=4, r_scale=0.5)


@pytest.fixture(scope="session")
def gauss_window(grid11):
    return catalog_eval(Gaussian(1.0), grid11)


def roumieu(s=math.inf, sigma=math.inf):
    return GSIndex(s, sigma, "roumieu")


def beurling(s=math.inf, sigma=math.inf):
    return GSIndex(s, sigma, "beurling")


def rel_max_err(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    return float(np.max(np.abs(a - b)) / np.max(np.abs(b)))
