"""Unit tests for the lattice model, orbital recipes and the orbital flows."""

import numpy as np
import pytest

from meanfield_lab.config.run_config import InteractionConfig, ModelConfig
from meanfield_lab.errors import DomainError, IntegrationQualityError, ValidationError
from meanfield_lab.meanfield.flow import (
    exchange_energy,
    fock_matrix,
    hartree_energy,
    integrate_orbitals,
    mean_field_potential,
    step_count,
)
from meanfield_lab.meanfield.model import (
    LatticeModel,
    field_profile,
    kernel_from_config,
    periodic_convolution,
    periodic_distance,
)
from meanfield_lab.meanfield.orbitals import (
    OrbitalSet,
    initial_orbitals,
    lowest_eigenvectors,
    plane_wave_momenta,
    plane_waves,
    random_orthonormal,
    replace_orbital,
)


class TestLatticeModel:
    """Tests for LatticeModel validation and helpers."""

    def test_odd_kernel_rejected(self) -> None:
        """v(d) must equal v(M - d)."""
        with pytest.raises(ValidationError) as exc_info:
            LatticeModel(M=4, v=np.array([0.0, 1.0, 0.0, 0.5]))

        assert "even" in exc_info.value.message

    def test_bad_sizes(self) -> None:
        """Non-positive M and epsilon are domain errors."""
        with pytest.raises(DomainError):
            LatticeModel(M=0, v=np.zeros(0))
        with pytest.raises(DomainError):
            LatticeModel(M=3, v=np.zeros(3), epsilon=0.0)

    def test_field_length_checked(self) -> None:
        """The external field needs one value per site."""
        with pytest.raises(ValidationError):
            LatticeModel(M=3, v=np.zeros(3), w=np.zeros(4))

    def test_one_body_matrix_spectrum(self) -> None:
        """Free hopping on M sites has eigenvalues 2 - 2 cos(2 pi k / M)."""
        model = LatticeModel(M=5, v=np.zeros(5))

        levels = np.sort(np.linalg.eigvalsh(model.one_body_matrix()))
        expected = np.sort(2.0 - 2.0 * np.cos(2.0 * np.pi * np.arange(5) / 5))

        assert np.allclose(levels, expected)

    def test_scaled_kernel_and_free(self, model: LatticeModel) -> None:
        """N**-beta scaling and the free copy."""
        assert np.allclose(model.scaled_kernel(4), model.v / 4.0)
        assert model.free().is_free
        assert not model.is_free
        assert np.allclose(model.free().w, model.w)

    def test_from_config(self) -> None:
        """from_config builds an M-site model from the model table."""
        config = ModelConfig(beta=1.0, field="none", interaction=InteractionConfig(kind="nearest"))

        model = LatticeModel.from_config(config, 7)

        assert model.M == 7
        assert model.beta == 1.0
        assert np.all(model.w == 0)
        assert model.v[1] == model.v[6] == 1.0

    @pytest.mark.parametrize(
        "kind",
        ["zero", "constant", "contact", "nearest", "exponential", "inverse_distance", "random"],
    )
    def test_every_kernel_is_even(self, kind: str) -> None:
        """Each kernel family produces an even kernel accepted by the model."""
        v = kernel_from_config(8, InteractionConfig(kind=kind), np.random.default_rng(3))

        assert np.allclose(v, v[(-np.arange(8)) % 8])
        LatticeModel(M=8, v=v)

    def test_random_kernel_sign(self) -> None:
        """nonnegative=False allows negative entries; the default does not."""
        rng = np.random.default_rng(11)
        signed = kernel_from_config(
            50, InteractionConfig(kind="random", nonnegative=False), rng
        )
        positive = kernel_from_config(50, InteractionConfig(kind="random"), rng)

        assert np.any(signed < 0)
        assert np.all(positive >= 0)

    def test_unknown_field(self) -> None:
        """Unknown field names are domain errors."""
        with pytest.raises(DomainError):
            field_profile(4, "sawtooth", 1.0)

    def test_periodic_helpers(self) -> None:
        """Distances wrap around and the convolution of a delta is the kernel."""
        assert list(periodic_distance(5)) == [0, 1, 2, 2, 1]
        delta = np.zeros(5)
        delta[0] = 1.0
        kernel = np.array([3.0, 1.0, 0.5, 0.5, 1.0])

        assert np.allclose(periodic_convolution(kernel, delta), kernel)


class TestOrbitals:
    """Tests for orbital sets and recipes."""

    def test_lowest_eigenvectors_orthonormal(self, model: LatticeModel) -> None:
        orbitals = lowest_eigenvectors(model, 3)

        assert orbitals.gram_deviation() < 1e-12
        assert orbitals.density().sum() == pytest.approx(3.0)

    def test_plane_wave_momenta(self) -> None:
        """Momenta fill in increasing |k|."""
        assert plane_wave_momenta(1) == [0]
        assert plane_wave_momenta(4) == [0, 1, -1, 2]

    def test_plane_waves_uniform_density(self) -> None:
        """Plane waves have constant density N / M."""
        orbitals = plane_waves(8, 3)

        assert np.allclose(orbitals.density(), 3.0 / 8.0)
        assert orbitals.gram_deviation() < 1e-12

    def test_random_is_seeded(self) -> None:
        """The same seed gives the same orbitals."""
        a = random_orthonormal(6, 3, np.random.default_rng(5))
        b = random_orthonormal(6, 3, np.random.default_rng(5))

        assert np.array_equal(a.coefficients, b.coefficients)
        assert a.gram_deviation() < 1e-12

    def test_replace_orbital(self) -> None:
        """A vector orthogonal to the set replaces one orbital; anything else is refused."""
        orbitals = plane_waves(6, 2)
        chi = plane_waves(6, 3).coefficients[:, 2]

        replaced = replace_orbital(orbitals, 1, chi)

        assert replaced.gram_deviation() < 1e-12
        with pytest.raises(ValidationError):
            replace_orbital(orbitals, 1, orbitals.coefficients[:, 0])

    def test_validate(self) -> None:
        """Non-orthonormal columns fail validation."""
        orbitals = OrbitalSet(np.ones((4, 2), dtype=np.complex128))

        with pytest.raises(ValidationError):
            orbitals.validate()

    def test_bad_shapes(self) -> None:
        """N must lie in 1..M."""
        with pytest.raises(ValidationError):
            OrbitalSet(np.ones((2, 3), dtype=np.complex128))
        with pytest.raises(DomainError):
            lowest_eigenvectors(LatticeModel(M=3, v=np.zeros(3)), 4)

    def test_initial_orbitals_dispatch(self, model: LatticeModel) -> None:
        """Recipes by name; unknown names are domain errors."""
        assert initial_orbitals("plane_waves", model, 2).N == 2
        assert initial_orbitals("random", model, 2, np.random.default_rng(0)).M == model.M
        with pytest.raises(DomainError):
            initial_orbitals("gaussian", model, 2)


class TestFlow:
    """Tests for the Hartree and Hartree-Fock flows."""

    def test_fock_matrix_hermitian(self, orbitals: OrbitalSet, model: LatticeModel) -> None:
        for exchange in (False, True):
            F = fock_matrix(orbitals, model, exchange)
            assert np.max(np.abs(F - F.conj().T)) < 1e-12

    def test_mean_field_potential_of_constant_kernel(self, orbitals: OrbitalSet) -> None:
        """A constant kernel c gives the potential c N^(1 - beta) everywhere."""
        model = LatticeModel(M=6, v=np.full(6, 2.0), beta=1.0)

        assert np.allclose(mean_field_potential(orbitals, model), 2.0)

    def test_exchange_energy_bounded_by_direct(
        self, orbitals: OrbitalSet, model: LatticeModel
    ) -> None:
        """For a non-negative kernel the exchange energy does not exceed the direct one."""
        direct = hartree_energy(orbitals, model) - hartree_energy(orbitals, model.free())

        assert 0.0 <= exchange_energy(orbitals, model) <= direct + 1e-12

    def test_step_count(self) -> None:
        """Steps cover [0, t_final] with step at most dt."""
        assert step_count(1.0, 0.1) == 10
        assert step_count(1.0, 0.3) == 4
        assert step_count(0.0, 0.1) == 0
        with pytest.raises(DomainError):
            step_count(1.0, 0.0)
        with pytest.raises(DomainError):
            step_count(-1.0, 0.1)

    @pytest.mark.parametrize("exchange", [False, True])
    def test_flow_conserves_gram_and_energy(
        self, orbitals: OrbitalSet, model: LatticeModel, exchange: bool
    ) -> None:
        """RK4 keeps orthonormality and the matching energy functional."""
        start = random_orthonormal(6, 3, np.random.default_rng(2))

        trajectory = integrate_orbitals(start, model, 1.0, 5e-3, exchange=exchange)

        assert trajectory.max_gram_drift < 1e-8
        assert trajectory.energy_drift < 1e-8
        assert trajectory.times[0] == 0.0
        assert trajectory.times[-1] == pytest.approx(1.0)

    @pytest.mark.parametrize("exchange", [False, True])
    def test_fourth_order_convergence(self, model: LatticeModel, exchange: bool) -> None:
        """Halving dt shrinks the error at t = 1 by about 2^4."""
        start = random_orthonormal(6, 3, np.random.default_rng(11))
        dt = 0.05

        def final(step: float) -> np.ndarray:
            trajectory = integrate_orbitals(
                start, model, 1.0, step, exchange=exchange, record_every=1000, gram_tolerance=1.0
            )
            return trajectory.final.coefficients

        reference = final(dt / 16)
        coarse = np.linalg.norm(final(dt) - reference)
        fine = np.linalg.norm(final(dt / 2) - reference)

        assert fine > 0.0
        assert 12.0 <= coarse / fine <= 20.0

    def test_record_every(self, orbitals: OrbitalSet, model: LatticeModel) -> None:
        """Samples every k steps plus the final step."""
        trajectory = integrate_orbitals(orbitals, model, 1.0, 0.1, record_every=3)

        assert trajectory.times == pytest.approx([0.0, 0.3, 0.6, 0.9, 1.0])
        assert trajectory.at_time(0.6).t == pytest.approx(0.6)
        with pytest.raises(DomainError):
            trajectory.at_time(0.5)

    def test_zero_duration(self, orbitals: OrbitalSet, model: LatticeModel) -> None:
        """t_final = 0 records only the initial state."""
        trajectory = integrate_orbitals(orbitals, model, 0.0, 0.1)

        assert trajectory.times == [0.0]
        assert trajectory.final is orbitals

    def test_stationary_free_orbitals(self) -> None:
        """h0 eigenvectors keep their density under the free flow."""
        model = LatticeModel(M=6, v=np.zeros(6), w=np.linspace(0.0, 0.5, 6))
        start = lowest_eigenvectors(model, 2)

        trajectory = integrate_orbitals(start, model, 0.5, 1e-2)

        assert np.allclose(trajectory.final.density(), start.density(), atol=1e-9)

    def test_drift_raises(self, orbitals: OrbitalSet, model: LatticeModel) -> None:
        """A coarse step with a tight tolerance stops the integration."""
        with pytest.raises(IntegrationQualityError) as exc_info:
            integrate_orbitals(orbitals, model, 1.0, 0.5, gram_tolerance=1e-14)

        assert exc_info.value.suggestion == "reduce dt"
