from __future__ import annotations

import pytest

from dce import MirrorLaw, spectrum

# The four reference spectra are expensive enough to share across the suite.
# All are fully deterministic, so session scope is safe.


@pytest.fixture(scope="session")
def spectrum_fig_small():
    return spectrum(MirrorLaw(L0=1.0, a=1e-2, l0=1.0, T=2.0))


@pytest.fixture(scope="session")
def spectrum_fig_big():
    return spectrum(MirrorLaw(L0=1.0, a=1e-1, l0=1.0, T=2.0))


@pytest.fixture(scope="session")
def spectrum_band_small():
    return spectrum(MirrorLaw(L0=4.0, a=1e-2, l0=1.0, T=8.0))


@pytest.fixture(scope="session")
def spectrum_band_big():
    return spectrum(MirrorLaw(L0=4.0, a=1e-1, l0=1.0, T=8.0))
