"""Property suites across modules and the report that gates ``mflab verify``."""

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from itertools import product

import logfire
import numpy as np
from numpy.typing import NDArray

from meanfield_lab.counting.functional import alpha_n, alpha_n_via_density
from meanfield_lab.counting.tensor_oracle import (
    IdentityCheck,
    check_n_hat_identity,
    check_orthogonal_projectors,
    check_powers,
    check_qq_bound,
    check_resolution_of_identity,
    check_shift_lemma,
    root_shift_forms,
    rooted_norm_bounds,
)
from meanfield_lab.counting.weights import weight_m, weight_n
from meanfield_lab.density.lemmas import check_density_lemma
from meanfield_lab.errors import ConfigError, LabError
from meanfield_lab.estimates.bounds import term_bound_check
from meanfield_lab.estimates.derivative import commutator_form, derivative_three_terms
from meanfield_lab.estimates.diagonalize import diagonalize_pvp, sandwich_inequalities
from meanfield_lab.estimates.gronwall import gronwall_envelope
from meanfield_lab.estimates.margins import MARGIN_TOL, MarginReport
from meanfield_lab.estimates.variance import (
    fluctuation_variance,
    fock_variance,
    variance_ceiling,
    variance_profile,
)
from meanfield_lab.fock.sector import build_sector
from meanfield_lab.fock.states import random_state
from meanfield_lab.fock.tensor import (
    TENSOR_CAP,
    TENSOR_MATRIX_CAP,
    TensorState,
    from_tensor,
    random_antisymmetric,
)
from meanfield_lab.meanfield.model import LatticeModel, random_kernel
from meanfield_lab.meanfield.orbitals import OrbitalSet, random_orthonormal
from meanfield_lab.scaling3d.fermi import (
    closed_shell_sizes,
    fermi_ball,
    fermi_ball_exchange_sum,
    lieb_thirring_margin,
    occupied_volume_check,
)
from meanfield_lab.scaling3d.fits import fit_exponent
from meanfield_lab.scaling3d.inequalities import (
    gaussian_profile,
    hardy_spot_check,
    hls_spot_check,
    lorentzian_profile,
)
from meanfield_lab.scaling3d.potential import mean_field_sup, scaled_potential_check

IDENTITY_TOL = 1e-10
SUITE_NAMES = ("counting", "density", "estimates", "scaling3d")


@dataclass
class SuiteResult:
    """Margins of one suite; a margin below -tolerance fails it."""

    name: str
    tolerance: float = MARGIN_TOL
    margins: dict[str, float] = field(default_factory=dict)
    error: str | None = None

    def record(self, label: str, margin: float) -> None:
        # keep the worst value when a label repeats over samples
        self.margins[label] = min(float(margin), self.margins.get(label, np.inf))

    def record_gap(self, label: str, gap: float, tolerance: float = IDENTITY_TOL) -> None:
        """An identity holding to ``tolerance`` enters as margin tolerance - gap."""
        self.record(label, tolerance - gap)

    def absorb(self, report: MarginReport, prefix: str = "") -> None:
        for m in report.margins:
            self.record(prefix + m.name, m.margin)

    def absorb_identity(self, check: IdentityCheck) -> None:
        self.record(check.name, check.margin)

    @property
    def checks(self) -> int:
        return len(self.margins)

    @property
    def worst_margin(self) -> float:
        return min(self.margins.values(), default=0.0)

    @property
    def worst_check(self) -> str | None:
        if not self.margins:
            return None
        return min(self.margins, key=lambda k: self.margins[k])

    @property
    def passed(self) -> bool:
        return self.error is None and self.worst_margin >= -self.tolerance

    def to_dict(self) -> dict[str, object]:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": self.checks,
            "worst_margin": self.worst_margin,
            "worst_check": self.worst_check,
            "error": self.error,
            "margins": self.margins,
        }


@dataclass
class SuiteReport:
    """Results of every suite that ran."""

    seed: int
    sizes: list[int]
    results: list[SuiteResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def worst_margin(self) -> float:
        return min((r.worst_margin for r in self.results), default=0.0)

    @property
    def failed(self) -> list[str]:
        return [r.name for r in self.results if not r.passed]

    def to_dict(self) -> dict[str, object]:
        return {
            "seed": self.seed,
            "sizes": self.sizes,
            "passed": self.passed,
            "worst_margin": self.worst_margin,
            "suites": [r.to_dict() for r in self.results],
        }


def _rng(seed: int, *keys: int) -> np.random.Generator:
    return np.random.default_rng([seed, *keys])


def suite_sites(N: int) -> list[int]:
    """Lattice sizes tried for N: every M from N + 1 up to 5, and M = 2N."""
    return sorted({N + 1, *range(N + 1, 6), 2 * N})


def _root_shift_gap(
    tensor: TensorState, orbitals: OrbitalSet, h12: NDArray[np.complex128]
) -> float:
    """Largest spread of the three root-shift forms over a, b in 0..2 and d in 1..2."""
    m = weight_m(tensor.N, 0.5)
    worst = 0.0
    for a, b, d in product(range(3), range(3), (1, 2)):
        plain, with_boundary, without_boundary = root_shift_forms(tensor, m, orbitals, h12, a, b, d)
        worst = max(worst, abs(plain - with_boundary), abs(plain - without_boundary))
    return worst


def counting_suite(seed: int, sizes: Sequence[int], samples: int) -> SuiteResult:
    """Dual-path alpha_n and the projector algebra on the tensor oracle."""
    result = SuiteResult("counting")
    for N in sizes:
        for M in suite_sites(N):
            rng = _rng(seed, 1, N, M)
            sector = build_sector(M, N)
            for _ in range(samples):
                orbitals = random_orthonormal(M, N, rng)
                psi = random_state(sector, rng)
                gap = abs(alpha_n(psi, orbitals) - alpha_n_via_density(psi, orbitals))
                result.record_gap("alpha_n: distribution = tr(mu q)", gap, 1e-12)
            if M**N > TENSOR_MATRIX_CAP:
                continue
            orbitals = random_orthonormal(M, N, rng)
            x = np.arange(M)
            v = random_kernel(M, rng)
            h12 = np.diag(v[(x[:, None] - x[None, :]) % M].ravel()).astype(np.complex128)
            result.absorb_identity(check_resolution_of_identity(orbitals))
            result.absorb_identity(check_orthogonal_projectors(orbitals))
            for f in (weight_n(N), weight_m(N, 0.5)):
                result.absorb_identity(check_powers(f, orbitals))
                if N >= 2:
                    result.absorb_identity(check_shift_lemma(f, orbitals, h12))
            tensor = random_antisymmetric(M, N, rng)
            result.absorb_identity(check_n_hat_identity(tensor, orbitals))
            if N >= 2:
                result.absorb_identity(check_qq_bound(tensor, orbitals))
                for report in rooted_norm_bounds(tensor, orbitals, 0.5):
                    for key, margin in report.margins.items():
                        result.record(f"rooted d={report.d} c={report.c} {key}", margin)
                result.record_gap("root shift", _root_shift_gap(tensor, orbitals, h12), 1e-10)
    return result


def density_suite(seed: int, sizes: Sequence[int], samples: int) -> SuiteResult:
    """Density-matrix inequality chain on random antisymmetric states."""
    result = SuiteResult("density", tolerance=1e-10)
    for N in sizes:
        for M in suite_sites(N):
            rng = _rng(seed, 2, N, M)
            sector = build_sector(M, N)
            for _ in range(samples):
                orbitals = random_orthonormal(M, N, rng)
                report = check_density_lemma(random_state(sector, rng), orbitals)
                for label, margin in report.margins.items():
                    result.record(label, margin)
                for label, gap in report.identities.items():
                    result.record_gap(label, gap)
    return result


def _variance_checks(
    result: SuiteResult, seed: int, sizes: Sequence[int], samples: int
) -> None:
    """Orbital variance formula against the occupation-basis second moment."""
    for N in sizes:
        rng = _rng(seed, 4, N)
        full = random_orthonormal(N, N, rng)
        model = LatticeModel(M=N, v=random_kernel(N, rng))
        worst = max(abs(fluctuation_variance(full, model, y)) for y in range(N))
        result.record_gap("full shell variance = 0", worst)
        for M in suite_sites(N):
            model = LatticeModel(M=M, v=random_kernel(M, rng, nonnegative=False))
            for _ in range(max(1, samples // 5)):
                orbitals = random_orthonormal(M, N, rng)
                y = int(rng.integers(M))
                formula = fluctuation_variance(orbitals, model, y)
                gap = abs(formula - fock_variance(orbitals, model, y))
                result.record_gap("variance = Fock second moment", gap)


def estimates_suite(seed: int, sizes: Sequence[int], samples: int) -> SuiteResult:
    """Derivative identity, pair diagonalization, sandwich and term bounds, variance."""
    result = SuiteResult("estimates")
    for N in sizes:
        if N < 2:
            continue
        M = N + 2
        if M**N > TENSOR_CAP:
            logfire.info("Skipping tensor estimates", N=N, M=M, cap=TENSOR_CAP)
            continue
        rng = _rng(seed, 3, N, M)
        for _ in range(max(1, samples // 25)):
            orbitals = random_orthonormal(M, N, rng)
            model = LatticeModel(M=M, v=random_kernel(M, rng, nonnegative=False), beta=2.0 / 3.0)
            tensor = random_antisymmetric(M, N, rng)
            psi = from_tensor(tensor)

            decomposition = derivative_three_terms(psi, orbitals, model, fd_dt=None)
            commutator = commutator_form(psi, orbitals, model)
            result.record_gap(
                "commutator = t1 + t2 + t3", abs(commutator - decomposition.total), 1e-10
            )
            for gamma in (1.0, 0.5):
                result.absorb(
                    term_bound_check(tensor, orbitals, model, gamma), prefix=f"gamma={gamma:g} "
                )

            h = random_kernel(M, rng)
            x1 = int(rng.integers(M))
            pair = diagonalize_pvp(orbitals, h, x1)
            result.record("pvp eigenvalues >= 0", float(np.min(pair.eigenvalues)) + 1e-12)
            column = h[(x1 - np.arange(M)) % M]
            p = orbitals.projector()
            A = pair.reconstruct()
            result.record_gap(
                "pvp reconstruction", float(np.max(np.abs(A - p @ np.diag(column) @ p))), 1e-12
            )
            trace_gap = abs(float(np.sum(pair.eigenvalues)) - float(column @ orbitals.density()))
            result.record_gap("sum of pvp eigenvalues = (h * rho)(x1)", trace_gap)
            result.absorb(sandwich_inequalities(tensor, orbitals, h))

            variance = variance_profile(orbitals, model)
            ceiling = variance_ceiling(orbitals, model)
            result.record("variance >= 0", float(np.min(variance)) + IDENTITY_TOL)
            result.record("variance <= (v^2 * rho)", float(np.min(ceiling - variance)))

    _variance_checks(result, seed, sizes, samples)

    times = np.linspace(0.0, 1.0, 11)
    flat = gronwall_envelope(0.3, np.zeros_like(times), 1.0, 4, times)
    result.record_gap("C = 0 envelope is constant", float(np.max(np.abs(flat.values - 0.3))))
    return result


def scaling3d_suite(N_max: int = 2000, s_values: Sequence[float] = (0.5, 1.0)) -> SuiteResult:
    """Fermi-ball inequalities and exponents, Hardy and HLS spot checks."""
    result = SuiteResult("scaling3d")
    shells = closed_shell_sizes(7, N_max)
    for N in shells:
        ball = fermi_ball(N)
        result.absorb(lieb_thirring_margin(ball))
        result.absorb(occupied_volume_check(ball), prefix=f"N={N} ")
    for s in s_values:
        for N in shells[:: max(1, len(shells) // 5)]:
            result.absorb(scaled_potential_check(fermi_ball(N), s), prefix=f"s={s:g} ")
        fit = fit_exponent(shells, [mean_field_sup(s, n) for n in shells])
        result.record_gap(
            f"s={s:g} potential exponent = 1 - s/3", abs(fit.exponent - (1.0 - s / 3.0)), 0.05
        )
        result.absorb(hls_spot_check(s))
    large = [n for n in shells if n >= 50]
    if len(large) >= 2:
        fit = fit_exponent(large, [fermi_ball_exchange_sum(fermi_ball(n)) for n in large])
        result.record_gap("exchange sum exponent = 1", abs(fit.exponent - 1.0), 0.1)
    profiles = [gaussian_profile(1.0), gaussian_profile(2.5), lorentzian_profile(1.0)]
    result.absorb(hardy_spot_check(profiles))
    return result


def _guarded(name: str, run: Callable[[], SuiteResult]) -> SuiteResult:
    with logfire.span("suite", name=name):
        try:
            result = run()
        except LabError as e:
            logfire.error("Suite raised", suite=name, error=str(e))
            result = SuiteResult(name, error=str(e))
    if result.passed:
        logfire.info("Suite passed", suite=name, checks=result.checks, worst=result.worst_margin)
    else:
        logfire.warn(
            "Suite failed", suite=name, worst=result.worst_margin, check=result.worst_check
        )
    return result


def verify_all(
    seed: int,
    sizes: Sequence[int],
    samples: int = 125,
    suites: Sequence[str] | None = None,
) -> SuiteReport:
    """Run the counting, density, estimates and scaling3d suites.

    An empty ``sizes`` gives an empty, passing report.
    """
    report = SuiteReport(seed=seed, sizes=list(sizes))
    if not sizes:
        return report
    selected = set(SUITE_NAMES if suites is None else suites)
    unknown = selected - set(SUITE_NAMES)
    if unknown:
        raise ConfigError(
            f"unknown suites {sorted(unknown)}; choose from {list(SUITE_NAMES)}",
            field="verify.suites",
        )
    runners: dict[str, Callable[[], SuiteResult]] = {
        "counting": lambda: counting_suite(seed, sizes, samples),
        "density": lambda: density_suite(seed, sizes, samples),
        "estimates": lambda: estimates_suite(seed, sizes, samples),
        "scaling3d": scaling3d_suite,
    }
    for name in SUITE_NAMES:
        if name in selected:
            report.results.append(_guarded(name, runners[name]))
    logfire.info("Verification finished", passed=report.passed, worst=report.worst_margin)
    return report
