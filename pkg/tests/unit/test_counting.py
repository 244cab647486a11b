"""Unit tests for weights, the counting functional and the projector algebra."""

import numpy as np
import pytest

from meanfield_lab.counting.functional import (
    ComplementProjector,
    alpha_f,
    alpha_n,
    alpha_n_via_density,
    excitation_distribution,
    outside_number_operator,
)
from meanfield_lab.counting.tensor_oracle import (
    check_n_hat_identity,
    check_orthogonal_projectors,
    check_powers,
    check_qq_bound,
    check_resolution_of_identity,
    check_shift_lemma,
    f_hat_tensor,
    pnk_tensor,
    root_shift_forms,
    rooted_norm_bounds,
)
from meanfield_lab.counting.weights import WeightFunction, weight_from_name, weight_m, weight_n
from meanfield_lab.errors import DomainError, ValidationError
from meanfield_lab.fock.sector import build_sector
from meanfield_lab.fock.states import ManyBodyState, random_state, slater_state
from meanfield_lab.fock.tensor import random_antisymmetric, tensor_representation
from meanfield_lab.meanfield.orbitals import (
    OrbitalSet,
    plane_waves,
    random_orthonormal,
    replace_orbital,
)


def _random_two_body(M: int, rng: np.random.Generator) -> np.ndarray:
    h = rng.standard_normal((M * M, M * M)) + 1j * rng.standard_normal((M * M, M * M))
    return h.astype(np.complex128)


class TestWeights:
    """Tests for the weight functions n and m."""

    def test_weight_n(self) -> None:
        assert np.allclose(weight_n(4).values, [0.0, 0.25, 0.5, 0.75, 1.0])

    def test_weight_m_threshold(self) -> None:
        """m(k) = k / N^gamma up to the threshold, then 1; ties take the linear branch."""
        m = weight_m(4, 0.5)

        assert np.allclose(m.values, [0.0, 0.5, 1.0, 1.0, 1.0])

    def test_weight_m_gamma_one_is_n(self) -> None:
        assert np.allclose(weight_m(5, 1.0).values, weight_n(5).values)

    def test_weight_m_domain(self) -> None:
        """gamma outside (0, 1] is refused."""
        with pytest.raises(DomainError):
            weight_m(4, 0.0)
        with pytest.raises(DomainError):
            weight_m(4, 1.5)

    def test_m_dominates_n(self) -> None:
        """m(gamma) >= n pointwise for every gamma."""
        for gamma in (0.25, 0.5, 2.0 / 3.0, 1.0):
            assert weight_m(9, gamma).dominates(weight_n(9))
            assert weight_m(9, gamma).is_monotone()

    def test_boundary_values_enforced(self) -> None:
        """f(0) = 0 and f(N) = 1 are required."""
        with pytest.raises(ValidationError):
            WeightFunction(2, np.array([0.1, 0.5, 1.0]))
        with pytest.raises(ValidationError):
            WeightFunction(2, np.array([0.0, 0.5, 0.9]))

    def test_shifted_is_zero_off_range(self) -> None:
        """f(k + d) vanishes for k + d outside 0..N."""
        n = weight_n(3)

        assert np.allclose(n.shifted(1), [1 / 3, 2 / 3, 1.0, 0.0])
        assert np.allclose(n.shifted(-2), [0.0, 0.0, 0.0, 1 / 3])

    def test_weight_from_name(self) -> None:
        assert weight_from_name(3, "n").name == "n"
        assert weight_from_name(4, "m", 0.5).name == "m(0.5)"
        with pytest.raises(DomainError):
            weight_from_name(4, "m")
        with pytest.raises(DomainError):
            weight_from_name(4, "x")


class TestCountingFunctional:
    """Tests for alpha_f through the outside-number spectrum."""

    def test_slater_of_own_orbitals(self, random_orbitals: OrbitalSet) -> None:
        """A Slater determinant has alpha = 0 against its own orbitals."""
        psi = slater_state(random_orbitals, build_sector(5, 2))

        distribution = excitation_distribution(psi, random_orbitals)

        assert np.allclose(distribution, [1.0, 0.0, 0.0])
        assert alpha_n(psi, random_orbitals) == pytest.approx(0.0, abs=1e-12)

    def test_one_orbital_replaced(self) -> None:
        """Replacing one of N orbitals by an orthogonal one puts all weight on k = 1."""
        orbitals = plane_waves(6, 2)
        chi = plane_waves(6, 3).coefficients[:, 2]
        psi = slater_state(replace_orbital(orbitals, 0, chi), build_sector(6, 2))

        distribution = excitation_distribution(psi, orbitals)

        assert np.allclose(distribution, [0.0, 1.0, 0.0], atol=1e-12)
        assert alpha_n(psi, orbitals) == pytest.approx(0.5)
        assert alpha_f(psi, orbitals, weight_m(2, 0.5)) == pytest.approx(1.0 / np.sqrt(2.0))

    def test_dual_path(self, state: ManyBodyState, rng: np.random.Generator) -> None:
        """The distribution path and tr(mu q) agree."""
        orbitals = random_orthonormal(6, 3, rng)

        assert alpha_n(state, orbitals) == pytest.approx(
            alpha_n_via_density(state, orbitals), abs=1e-12
        )

    def test_range_and_domination(self, state: ManyBodyState, rng: np.random.Generator) -> None:
        """0 <= alpha_n <= alpha_m <= 1 and the distribution sums to one."""
        orbitals = random_orthonormal(6, 3, rng)

        distribution = excitation_distribution(state, orbitals)
        a_n = alpha_n(state, orbitals)
        a_m = alpha_f(state, orbitals, weight_m(3, 0.5))

        assert distribution.sum() == pytest.approx(1.0)
        assert 0.0 <= a_n <= a_m + 1e-12
        assert a_m <= 1.0 + 1e-12

    def test_non_orthonormal_orbitals(self, state: ManyBodyState, rng: np.random.Generator) -> None:
        """Shrunken orbitals give a non-integer outside-number spectrum."""
        orbitals = random_orthonormal(6, 3, rng)
        shrunk = OrbitalSet(0.9 * orbitals.coefficients)

        with pytest.raises(ValidationError):
            excitation_distribution(state, shrunk)

    def test_particle_number_mismatch(self, state: ManyBodyState) -> None:
        with pytest.raises(ValidationError):
            excitation_distribution(state, plane_waves(6, 2))

    def test_complement_projector(self, random_orbitals: OrbitalSet) -> None:
        """p and q are complementary orthogonal projectors of rank N and M - N."""
        projectors = ComplementProjector.from_orbitals(random_orbitals)

        assert projectors.rank == 2
        assert max(projectors.defects().values()) < 1e-12

    def test_outside_number_spectrum(self, random_orbitals: OrbitalSet) -> None:
        """N_out has integer eigenvalues between 0 and N."""
        levels = outside_number_operator(random_orbitals, build_sector(5, 2)).eigenvalues()

        assert np.allclose(levels, np.rint(levels), atol=1e-10)
        assert levels.min() > -1e-10
        assert levels.max() < 2.0 + 1e-10


class TestTensorOracle:
    """Tests for P_{N,k}, f_hat and the identities built on them (N <= 3, M <= 5)."""

    def test_resolution_and_orthogonality(self, random_orbitals: OrbitalSet) -> None:
        assert check_resolution_of_identity(random_orbitals).passed
        assert check_orthogonal_projectors(random_orbitals).passed

    def test_powers(self, random_orbitals: OrbitalSet) -> None:
        """f_hat squared is the hat of f squared."""
        for f in (weight_n(2), weight_m(2, 0.5)):
            assert check_powers(f, random_orbitals).passed

    def test_shift_lemma(self, rng: np.random.Generator) -> None:
        """Shift identity for a random two-body operator on N = 3, M = 4."""
        orbitals = random_orthonormal(4, 3, rng)

        check = check_shift_lemma(weight_m(3, 0.5), orbitals, _random_two_body(4, rng), tol=1e-10)

        assert check.passed, check.details

    def test_f_hat_matches_alpha(self, rng: np.random.Generator) -> None:
        """<psi, f_hat psi> on the tensor equals alpha_f on the sector."""
        orbitals = random_orthonormal(5, 3, rng)
        psi = random_state(build_sector(5, 3), rng)
        f = weight_m(3, 0.5)

        value = f_hat_tensor(f, orbitals).expectation(tensor_representation(psi)).real

        assert value == pytest.approx(alpha_f(psi, orbitals, f), abs=1e-12)

    def test_pnk_out_of_range_is_zero(self, random_orbitals: OrbitalSet) -> None:
        assert np.allclose(pnk_tensor(random_orbitals, 3).to_matrix(), 0.0)
        assert np.allclose(pnk_tensor(random_orbitals, -1).to_matrix(), 0.0)

    def test_n_hat_and_qq_bound(self, rng: np.random.Generator) -> None:
        """alpha_n = <q_1> and <q1 q2> <= N/(N-1) <n^2> on antisymmetric tensors."""
        orbitals = random_orthonormal(4, 3, rng)
        tensor = random_antisymmetric(4, 3, rng)

        assert check_n_hat_identity(tensor, orbitals).passed
        assert check_qq_bound(tensor, orbitals).passed

    def test_qq_bound_needs_two(self, rng: np.random.Generator) -> None:
        orbitals = random_orthonormal(4, 1, rng)
        with pytest.raises(DomainError):
            check_qq_bound(random_antisymmetric(4, 1, rng), orbitals)

    @pytest.mark.parametrize("gamma", [0.5, 1.0])
    def test_rooted_norm_bounds(self, gamma: float, rng: np.random.Generator) -> None:
        """Every rooted norm obeys its explicit bound on N = 3, M = 5."""
        orbitals = random_orthonormal(5, 3, rng)
        tensor = random_antisymmetric(5, 3, rng)

        reports = rooted_norm_bounds(tensor, orbitals, gamma)

        assert len(reports) == 4
        assert min(r.worst_margin for r in reports) >= -1e-12

    def test_root_shift_forms_agree(self, rng: np.random.Generator) -> None:
        """The three scalar products coincide for every a, b and d."""
        orbitals = random_orthonormal(4, 3, rng)
        tensor = random_antisymmetric(4, 3, rng)
        h12 = _random_two_body(4, rng)
        m = weight_m(3, 0.5)

        for a in range(3):
            for b in range(3):
                for d in (1, 2):
                    plain, with_boundary, without = root_shift_forms(
                        tensor, m, orbitals, h12, a, b, d
                    )
                    assert abs(plain - with_boundary) < 1e-10
                    assert abs(plain - without) < 1e-10

    def test_root_shift_argument_checks(self, rng: np.random.Generator) -> None:
        """Non-monotone weights and d outside 1..2 are refused."""
        orbitals = random_orthonormal(4, 3, rng)
        tensor = random_antisymmetric(4, 3, rng)
        h12 = _random_two_body(4, rng)
        bumpy = WeightFunction(3, np.array([0.0, 0.9, 0.4, 1.0]))

        with pytest.raises(DomainError):
            root_shift_forms(tensor, bumpy, orbitals, h12, 0, 0, 1)
        with pytest.raises(DomainError):
            root_shift_forms(tensor, weight_n(3), orbitals, h12, 0, 0, 3)
