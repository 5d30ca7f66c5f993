import sys

import numpy as np
import pytest

from pfjanossy import (PointSpace, WeightSpec, beta1_spec, beta2_spec, beta4_spec,
                       correlation_kernel, orthonormalize)

GAUSS = WeightSpec("gaussian", mean=0.0, std=1.0)


@pytest.fixture(scope="session")
def two_point():
    """beta = 1 on X = {0, 1}, counting measure, n = 1."""
    return beta1_spec([0.0, 1.0], None, 1)


@pytest.fixture(scope="session")
def beta1_int():
    """beta = 1 on {0, ..., 5}, counting measure, n = 2, raw monomial basis."""
    return beta1_spec(np.arange(6.0), None, 2)


@pytest.fixture(scope="session")
def beta1_m6():
    return orthonormalize(beta1_spec(np.linspace(-1, 1, 6), GAUSS, 2))


@pytest.fixture(scope="session")
def beta2_m5():
    return orthonormalize(beta2_spec(np.linspace(-1, 1, 5), GAUSS, 2))


@pytest.fixture(scope="session")
def beta4_m5():
    return orthonormalize(beta4_spec(np.linspace(-1, 1, 5), GAUSS, 2))


@pytest.fixture(scope="session")
def K_beta1_m6(beta1_m6):
    return correlation_kernel(beta1_m6)


@pytest.fixture(scope="session")
def weighted_beta1():
    """beta = 1 with uneven reference weights, to keep lam out of the 1's."""
    space = PointSpace(np.array([-1.0, -0.3, 0.1, 0.4, 1.2]), np.array([0.7, 1.3, 0.5, 2.0, 0.9]))
    return orthonormalize(beta1_spec(space, GAUSS, 2))


def on_interval(A, B, I):
    idx = np.stack([2 * np.asarray(I), 2 * np.asarray(I) + 1], axis=1).reshape(-1)
    return np.max(np.abs(A.full()[np.ix_(idx, idx)] - B.full()[np.ix_(idx, idx)]))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
