"""Unit tests for the semiclassical trace-norm diagnostics."""

import numpy as np
import pytest

from meanfield_lab.errors import DomainError, ValidationError
from meanfield_lab.meanfield.model import LatticeModel, exponential_kernel
from meanfield_lab.meanfield.orbitals import lowest_eigenvectors, plane_waves
from meanfield_lab.semiclassical import (
    commutator_trace_norm,
    gradient_matrix,
    phase_matrix,
    semiclassical_model,
    semiclassical_run,
    static_diagnostics,
)


@pytest.fixture
def scaled_model() -> LatticeModel:
    """Six sites at filling three with epsilon = 1/3."""
    return semiclassical_model(LatticeModel(M=6, v=exponential_kernel(6, 1.0)), 3)


class TestTraceNorms:
    """Tests for ||[p, U]||_tr."""

    def test_identity_commutes(self) -> None:
        assert commutator_trace_norm(np.eye(4, dtype=np.complex128), phase_matrix(4, 1)) == 0.0

    def test_plane_waves(self) -> None:
        """Plane waves commute with the difference operator; a phase moves two momenta."""
        values = static_diagnostics(plane_waves(8, 2), [1])

        assert values["phase k=1"] == pytest.approx(2.0)
        assert values["gradient"] == pytest.approx(0.0, abs=1e-12)

    def test_not_a_projector(self) -> None:
        with pytest.raises(ValidationError):
            commutator_trace_norm(0.5 * np.eye(3, dtype=np.complex128), gradient_matrix(3))
        with pytest.raises(ValidationError):
            commutator_trace_norm(np.eye(3, dtype=np.complex128), gradient_matrix(4))


class TestSemiclassicalModel:
    """Tests for the epsilon = 1/N scaling."""

    def test_scaling(self, scaled_model: LatticeModel) -> None:
        assert scaled_model.epsilon == pytest.approx(1.0 / 3.0)
        assert scaled_model.hopping == pytest.approx(1.0 / 9.0)
        assert scaled_model.beta == 1.0

    def test_needs_particles(self) -> None:
        with pytest.raises(DomainError):
            semiclassical_model(LatticeModel(M=3, v=np.zeros(3)), 0)


class TestSemiclassicalRun:
    """Tests for the recorded series."""

    def test_coupled_run(self, scaled_model: LatticeModel) -> None:
        """alpha_n starts at zero and stays under its envelope."""
        orbitals = lowest_eigenvectors(scaled_model, 3)

        diagnostics = semiclassical_run(
            scaled_model, orbitals, 0.2, 0.01, modes=(1, 2), record_every=5
        )

        assert diagnostics.times == pytest.approx([0.0, 0.05, 0.1, 0.15, 0.2])
        assert diagnostics.alpha_n is not None
        assert diagnostics.alpha_n[0] == pytest.approx(0.0, abs=1e-12)
        assert diagnostics.envelope_margin is not None
        assert diagnostics.envelope_margin >= -1e-9
        assert set(diagnostics.growth_rates()) == {"phase k=1", "phase k=2", "gradient"}
        assert set(diagnostics.to_rows()[0]) >= {"t", "phase_k1", "gradient", "envelope"}

    def test_uncoupled_run(self, scaled_model: LatticeModel) -> None:
        orbitals = lowest_eigenvectors(scaled_model, 3)

        diagnostics = semiclassical_run(scaled_model, orbitals, 0.1, 0.05, coupled=False)

        assert diagnostics.alpha_n is None
        assert diagnostics.envelope_margin is None
        assert "alpha_n" not in diagnostics.to_rows()[-1]

    def test_sector_cap_skips_exact_run(self, scaled_model: LatticeModel) -> None:
        """A sector above the cap records only the trace norms."""
        orbitals = lowest_eigenvectors(scaled_model, 3)

        diagnostics = semiclassical_run(scaled_model, orbitals, 0.1, 0.05, sector_cap=10)

        assert diagnostics.alpha_n is None
        assert len(diagnostics.gradient_norms) == len(diagnostics.times) == 3
