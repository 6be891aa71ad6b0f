import numpy as np
import pytest

from sidedot import DeviceParams, FetParams


@pytest.fixture(scope="session")
def preset_device() -> DeviceParams:
    """Device of the I-V figures: qubit levels 0.2 meV, center 0.1 meV above E_F."""
    return DeviceParams(
        e1=1.2e-3, e2_0=1.1e-3, w12=2e-4, w23=2e-4, delta=1.6e-4,
        ef=1.0e-3, gamma_l=2e-6, gamma_r=2e-6, temperature=0.1,
    )


@pytest.fixture(scope="session")
def bare_device(preset_device) -> DeviceParams:
    """Same device with the side couplings switched off."""
    return preset_device.with_(w12=0.0, w23=0.0)


@pytest.fixture(scope="session")
def fet_1um() -> FetParams:
    return FetParams.long_channel(gate_length=1e-6)


@pytest.fixture(scope="session")
def fet_10um() -> FetParams:
    return FetParams.long_channel(gate_length=1e-5)


@pytest.fixture(scope="session")
def coarse_vd_grid():
    return list(np.linspace(0.0, 3e-3, 61))
