"""Shared fixtures: small sample sets used across the test modules."""

import numpy as np
import pytest

from blockrat import SampleSet, logspace_imaginary
from blockrat.cli import problem_toy1, problem_toy2


@pytest.fixture(scope="session")
def toy1():
    return problem_toy1()


@pytest.fixture(scope="session")
def toy2():
    return problem_toy2()


@pytest.fixture()
def scalar_onepole():
    """10 samples of f(z) = 1/(z+1) on a log grid up the imaginary axis."""
    pts = logspace_imaginary(1, 100, 10)
    return pts, 1.0 / (pts + 1)


def constant_samples(G, ell=8):
    pts = logspace_imaginary(1, 10, ell)
    return SampleSet(pts, np.tile(np.asarray(G, dtype=complex), (ell, 1, 1)))
