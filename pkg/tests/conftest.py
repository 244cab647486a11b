"""Shared fixtures: small lattice models, orbitals and states."""

from collections.abc import Iterator

import numpy as np
import pytest

from meanfield_lab.core.config import get_settings
from meanfield_lab.fock.sector import SectorBasis, build_sector
from meanfield_lab.fock.states import ManyBodyState, random_state
from meanfield_lab.meanfield.model import LatticeModel, exponential_kernel, field_profile
from meanfield_lab.meanfield.orbitals import OrbitalSet, lowest_eigenvectors, random_orthonormal


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    """Keep MFLAB_* variables from the host out of the tests."""
    for name in ("MFLAB_SEED", "MFLAB_THREADS"):
        monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def model() -> LatticeModel:
    """Six sites, exponential repulsion, a small ramp field."""
    return LatticeModel(
        M=6,
        v=exponential_kernel(6, 1.0, 1.0),
        w=field_profile(6, "ramp", 0.1),
        beta=1.0,
    )


@pytest.fixture
def orbitals(model: LatticeModel) -> OrbitalSet:
    return lowest_eigenvectors(model, 3)


@pytest.fixture
def random_orbitals(rng: np.random.Generator) -> OrbitalSet:
    return random_orthonormal(5, 2, rng)


@pytest.fixture
def sector() -> SectorBasis:
    return build_sector(6, 3)


@pytest.fixture
def state(sector: SectorBasis, rng: np.random.Generator) -> ManyBodyState:
    return random_state(sector, rng)
