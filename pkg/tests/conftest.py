"""Shared fixtures: expensive model constructions reused across test modules."""

import numpy as np
import pytest

from fisherlab import SlitGeometry, farfield_model


@pytest.fixture(scope="session")
def geometry():
    return SlitGeometry()


@pytest.fixture(scope="session")
def slit_model(geometry):
    """Default far-field grid model (renormalized on [-40, 40])."""
    return farfield_model(geometry)


@pytest.fixture(scope="session")
def wide_slit_model(geometry):
    """Coarse but very wide grid: negligible truncation of the 1/mu^2 tails.

    The density's Fourier content is confined to |t| <= 2, so the trapezoid
    rule with step 0.5 is accurate far beyond its nominal order and the
    Fisher integral converges to the analytic value despite the coarse step.
    """
    return farfield_model(geometry, mu_max=2.0e6, n_points=8_000_001,
                          theta_domain=(-8.0, 8.0))


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260826)
