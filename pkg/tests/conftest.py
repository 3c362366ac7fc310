import numpy as np
import pytest

from adskg.geometry import make_params
from adskg.harmonics import AngularGrid


@pytest.fixture(scope="session")
def params_m0():
    """d=3, R=1, massless: nu = 3/2, Delta+ = 3, Delta- = 0."""
    return make_params(3, 1.0, 0.0)


@pytest.fixture(scope="session")
def params_neg():
    """d=3, m^2 R^2 = -2: nu = 1/2, Delta+ = 2, Delta- = 1 (exceptional range)."""
    return make_params(3, 1.0, -2.0)


@pytest.fixture(scope="session")
def params_pos():
    """d=3, m^2 R^2 = +1: nu = sqrt(13)/2, Delta- < 0 (evanescent growth)."""
    return make_params(3, 1.0, 1.0)


@pytest.fixture(scope="session")
def angular_small():
    """Angular grid large enough for l <= 7 projections, small enough to be fast."""
    return AngularGrid(24, 48)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
