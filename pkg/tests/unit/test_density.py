"""Unit tests for one-particle reduced density matrices and their inequality chain."""

import numpy as np
import pytest

from meanfield_lab.density.lemmas import check_density_lemma
from meanfield_lab.density.reduced import (
    ReducedDensityMatrix,
    norm_distances,
    norm_distances_of,
    reduced_density,
    slater_density,
    tensor_partial_trace,
)
from meanfield_lab.errors import ValidationError
from meanfield_lab.fock.sector import build_sector
from meanfield_lab.fock.states import ManyBodyState, random_state, slater_state
from meanfield_lab.fock.tensor import tensor_representation
from meanfield_lab.meanfield.orbitals import OrbitalSet, random_orthonormal


class TestReducedDensity:
    """Tests for mu_1 of sector states."""

    def test_trace_one_and_pauli(self, state: ManyBodyState) -> None:
        """mu_1 has unit trace and operator norm at most 1/N."""
        mu = reduced_density(state)

        assert np.trace(mu.matrix).real == pytest.approx(1.0)
        assert mu.pauli_excess() <= 1e-12
        assert mu.min_eigenvalue > -1e-12

    def test_slater_density(self, random_orbitals: OrbitalSet) -> None:
        """The Slater determinant has mu_1 = p / N."""
        psi = slater_state(random_orbitals, build_sector(5, 2))

        mu = reduced_density(psi)

        assert np.max(np.abs(mu.matrix - slater_density(random_orbitals).matrix)) < 1e-12

    def test_tensor_partial_trace_agrees(self, state: ManyBodyState) -> None:
        """Tracing out slots 2..N of the tensor gives the same matrix."""
        mu = reduced_density(state)

        traced = tensor_partial_trace(tensor_representation(state))

        assert np.max(np.abs(mu.matrix - traced.matrix)) < 1e-12

    def test_invalid_matrices(self) -> None:
        """Wrong trace or negative eigenvalues are refused."""
        with pytest.raises(ValidationError):
            ReducedDensityMatrix(np.eye(3, dtype=np.complex128), 3)
        with pytest.raises(ValidationError):
            ReducedDensityMatrix(np.diag([1.5, -0.5]).astype(np.complex128), 2)


class TestNormDistances:
    """Tests for trace, Hilbert-Schmidt and operator norms."""

    def test_diagonal_difference(self) -> None:
        diff = np.diag([0.5, -0.25, 0.0]).astype(np.complex128)

        d = norm_distances_of(diff)

        assert d.trace == pytest.approx(0.75)
        assert d.hs == pytest.approx(np.sqrt(0.3125))
        assert d.op == pytest.approx(0.5)

    def test_ordering(self, state: ManyBodyState, rng: np.random.Generator) -> None:
        """op <= HS <= trace for every pair."""
        mu = reduced_density(state)
        reference = slater_density(random_orthonormal(6, 3, rng))

        d = norm_distances(mu, reference)

        assert d.op <= d.hs + 1e-12
        assert d.hs <= d.trace + 1e-12
        assert d.to_dict() == {"trace": d.trace, "hs": d.hs, "op": d.op}

    def test_size_mismatch(self, random_orbitals: OrbitalSet, rng: np.random.Generator) -> None:
        other = slater_density(random_orthonormal(6, 2, rng))

        with pytest.raises(ValidationError):
            norm_distances(slater_density(random_orbitals), other)


class TestDensityLemma:
    """Tests for the alpha / trace / HS / operator-norm chain."""

    @pytest.mark.parametrize(("M", "N"), [(3, 2), (5, 2), (6, 3), (4, 3)])
    def test_random_states_pass(self, M: int, N: int) -> None:
        """Every margin is non-negative and the identities hold on random states."""
        rng = np.random.default_rng([M, N])
        sector = build_sector(M, N)
        for _ in range(10):
            report = check_density_lemma(random_state(sector, rng), random_orthonormal(M, N, rng))

            assert report.passed(), report.to_dict()

    def test_slater_is_tight(self, random_orbitals: OrbitalSet) -> None:
        """The mean-field state has alpha_n = 0 and zero distances."""
        psi = slater_state(random_orbitals, build_sector(5, 2))

        report = check_density_lemma(psi, random_orbitals)

        assert report.alpha_n == pytest.approx(0.0, abs=1e-12)
        assert report.distances.trace == pytest.approx(0.0, abs=1e-10)
        assert report.passed()

    def test_report_contents(self, state: ManyBodyState, rng: np.random.Generator) -> None:
        """One margin set per gamma plus the two trace identities."""
        report = check_density_lemma(state, random_orthonormal(6, 3, rng), gammas=(0.5,))

        assert "alpha_m(0.5) >= alpha_n" in report.margins
        assert "alpha_m(1) >= alpha_n" not in report.margins
        assert set(report.identities) == {
            "||q mu q||_tr = alpha_n",
            "||p/N - p mu p||_tr = alpha_n",
        }
        assert report.to_dict()["N"] == 3
