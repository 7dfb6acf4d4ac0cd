import pytest

from capillary import build_profile, maxwell_construction
from capillary.eos import FluidParams


@pytest.fixture(scope="session")
def fluid():
    return FluidParams.reduced()


@pytest.fixture(scope="session")
def coex09(fluid):
    return maxwell_construction(0.9, fluid)


@pytest.fixture(scope="session")
def profile09(coex09, fluid):
    return build_profile(coex09, fluid)
