import pytest

from comb_ranger import AirState, GaussianPulse


@pytest.fixture
def pulse800() -> GaussianPulse:
    """3 fs FWHM pulse: 800 nm carrier, delta_omega = omega0/6."""
    return GaussianPulse.from_wavelength(800e-9)


@pytest.fixture
def standard_air() -> AirState:
    return AirState.standard()


@pytest.fixture
def vacuum() -> AirState:
    return AirState.vacuum()
