import numpy as np
import pytest

from ssps import exp_ssps, sine_ssps


@pytest.fixture(scope="session")
def sine10():
    return sine_ssps(10.0)


@pytest.fixture(scope="session")
def exp10():
    return exp_ssps(10.0)


def fd_derivative(fn, t, h=1e-5):
    """Central finite difference, the standard derivative oracle in this suite."""
    t = np.asarray(t, dtype=float)
    return (np.asarray(fn(t + h)) - np.asarray(fn(t - h))) / (2.0 * h)
