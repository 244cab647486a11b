"""Coupled and free-limit runs: exact psi against the orbital flow, sampled on a grid."""

from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import logfire
import numpy as np
import scipy.integrate

from meanfield_lab.config.run_config import RunConfig
from meanfield_lab.counting.functional import alpha_from_distribution, excitation_distribution
from meanfield_lab.counting.weights import weight_m, weight_n
from meanfield_lab.density.reduced import norm_distances, reduced_density, slater_density
from meanfield_lab.errors import DomainError
from meanfield_lab.estimates.assumptions import (
    AssumptionQuantities,
    assumption_quantities,
    basic_rate,
    free_limit_delta,
    general_delta,
    general_rate,
)
from meanfield_lab.estimates.bounds import free_limit_budget_rate
from meanfield_lab.estimates.derivative import derivative_three_terms
from meanfield_lab.estimates.gronwall import gronwall_envelope
from meanfield_lab.estimates.margins import MarginReport
from meanfield_lab.experiments.records import RunRecord, RunRow
from meanfield_lab.fock.evolution import Propagator
from meanfield_lab.fock.operators import build_hamiltonian, schrodinger_generator
from meanfield_lab.fock.sector import build_sector
from meanfield_lab.fock.states import slater_state
from meanfield_lab.fock.tensor import TENSOR_CAP
from meanfield_lab.meanfield.flow import Trajectory, integrate_orbitals
from meanfield_lab.meanfield.model import LatticeModel
from meanfield_lab.meanfield.orbitals import OrbitalSet, initial_orbitals


@dataclass
class _Setup:
    N: int
    model: LatticeModel
    orbitals: OrbitalSet


def _setup(config: RunConfig, N: int) -> _Setup:
    # one stream per (seed, N) so a run does not depend on which others share the sweep
    rng = np.random.default_rng([config.seed, N])
    M = config.sites_for(N)
    model = LatticeModel.from_config(config.model, M, rng)
    orbitals = initial_orbitals(config.orbitals, model, N, rng)
    return _Setup(N=N, model=model, orbitals=orbitals)


def _sample_rows(
    config: RunConfig,
    setup: _Setup,
    trajectory: Trajectory,
    coupled: bool,
) -> tuple[list[RunRow], int]:
    """Evolve psi exactly to every recorded time and fill the common columns."""
    N, model = setup.N, setup.model
    sector = build_sector(model.M, N, cap=config.sector_cap)
    H = build_hamiltonian(model, sector)
    propagator = Propagator(schrodinger_generator(model, sector))
    psi0 = slater_state(setup.orbitals, sector)
    w_n, w_m = weight_n(N), weight_m(N, config.gamma)
    decompose = coupled and config.three_terms and model.M**N <= TENSOR_CAP
    if coupled and config.three_terms and not decompose:
        logfire.warn("Skipping derivative decomposition", N=N, M=model.M, cap=TENSOR_CAP)

    rows = []
    for state, energy in zip(trajectory.states, trajectory.energies, strict=True):
        psi = propagator.evolve(psi0, state.t - setup.orbitals.t)
        distribution = excitation_distribution(psi, state)
        distances = norm_distances(reduced_density(psi), slater_density(state))
        q = assumption_quantities(state, model, config.gamma)
        row = RunRow(
            N=N,
            M=model.M,
            t=state.t,
            alpha_n=alpha_from_distribution(distribution, w_n),
            alpha_m=alpha_from_distribution(distribution, w_m),
            trace=distances.trace,
            hs=distances.hs,
            op=distances.op,
            hartree_energy=energy,
            exact_energy=H.expectation(psi),
            D0=q.D0,
            D1=q.D1,
            D2=q.D2,
            D3=q.D3,
            D4=q.D4,
            D=q.D,
            rate=_rate(config, model, q),
        )
        if decompose:
            weight = w_n if config.weight == "n" else w_m
            d = derivative_three_terms(psi, state, model, weight, fd_dt=config.dt)
            row.t1, row.t2, row.t3, row.fd = d.t1_qp_pp, d.t2_qq_pp, d.t3_qq_pq, d.fd_reference
        rows.append(row)
    return rows, sector.dimension


def _rate(config: RunConfig, model: LatticeModel, q: AssumptionQuantities) -> float:
    if config.weight == "n":
        return basic_rate(q, model.epsilon)
    return general_rate(q, sign_changing=bool(np.any(model.v < 0))) / model.epsilon


def _delta(config: RunConfig) -> float:
    """N^-delta is 1/N for the n weight and N^-gamma for m with empty Omega."""
    if config.weight == "n":
        return 1.0
    return general_delta(config.gamma, 0.0, 0.0, 0.0)


def run_coupled(config: RunConfig, N: int) -> RunRecord:
    """Exact evolution of Slater(phi0) against the mean-field flow of phi0.

    Every sample carries both alpha values, the density-matrix distances, both
    energies, the size quantities and the Gronwall envelope for the configured
    weight.

    Raises:
        SizeLimitError: If the sector exceeds ``config.sector_cap``.
        IntegrationQualityError: If the orbital flow drifts.
    """
    setup = _setup(config, N)
    model = setup.model
    with logfire.span("coupled run", N=N, M=model.M, t_final=config.t_final, dt=config.dt):
        trajectory = integrate_orbitals(
            setup.orbitals,
            model,
            config.t_final,
            config.dt,
            exchange=config.exchange,
            record_every=config.record_every,
        )
        rows, dimension = _sample_rows(config, setup, trajectory, coupled=True)
        delta = _delta(config)
        column = "alpha_n" if config.weight == "n" else "alpha_m"
        alphas = [getattr(row, column) for row in rows]
        envelope = gronwall_envelope(
            alphas[0],
            np.array([row.rate for row in rows]),
            delta,
            N,
            np.array([row.t for row in rows]),
        )
        for row, value in zip(rows, envelope.values, strict=True):
            row.envelope = float(value)

    record = RunRecord(
        kind="coupled",
        N=N,
        M=model.M,
        dimension=dimension,
        weight=config.weight,
        gamma=config.gamma,
        delta=delta,
        seed=config.seed,
        gram_drift=trajectory.max_gram_drift,
        energy_drift=trajectory.energy_drift,
        rows=rows,
    )
    logfire.info(
        "Coupled run finished",
        N=N,
        M=model.M,
        dimension=dimension,
        alpha_final=alphas[-1],
        envelope_margin=record.envelope_report().worst_margin,
    )
    return record


def run_free_limit(config: RunConfig, N: int) -> RunRecord:
    """Exact evolution of Slater(phi0) against the free orbital flow.

    The budget column is alpha_m(0) + int_0^t B, with B the sum of the
    interaction-only term bounds for both signs of v at the measured alpha_m.

    Raises:
        DomainError: If the model is not at beta = 1.
        SizeLimitError: If the sector exceeds ``config.sector_cap``.
    """
    if config.model.beta != 1.0:
        raise DomainError(
            f"the free-limit comparison needs beta = 1, got {config.model.beta}",
            suggestion="set model.beta: 1.0",
        )
    setup = _setup(config, N)
    model = setup.model
    with logfire.span("free-limit run", N=N, M=model.M, t_final=config.t_final, dt=config.dt):
        trajectory = integrate_orbitals(
            setup.orbitals,
            model.free(),
            config.t_final,
            config.dt,
            record_every=config.record_every,
        )
        rows, dimension = _sample_rows(config, setup, trajectory, coupled=False)
        times = np.array([row.t for row in rows])
        budget_rate = np.array(
            [
                free_limit_budget_rate(state, model, config.gamma, row.alpha_m)
                for state, row in zip(trajectory.states, rows, strict=True)
            ]
        )
        integrated = scipy.integrate.cumulative_trapezoid(budget_rate, times, initial=0.0)
        for row, value in zip(rows, integrated, strict=True):
            row.budget = rows[0].alpha_m + float(value)

    delta = free_limit_delta(config.gamma) if 1.0 / 3.0 < config.gamma < 1.0 else None
    record = RunRecord(
        kind="free_limit",
        N=N,
        M=model.M,
        dimension=dimension,
        weight=f"m({config.gamma:g})",
        gamma=config.gamma,
        delta=delta,
        seed=config.seed,
        gram_drift=trajectory.max_gram_drift,
        energy_drift=trajectory.energy_drift,
        rows=rows,
    )
    logfire.info(
        "Free-limit run finished",
        N=N,
        M=model.M,
        growth=rows[-1].alpha_m - rows[0].alpha_m,
        budget_margin=record.budget_report().worst_margin,
    )
    return record


def run_one(config: RunConfig, N: int) -> RunRecord:
    if config.mode == "free_limit":
        return run_free_limit(config, N)
    return run_coupled(config, N)


def run_all(config: RunConfig, threads: int = 1) -> list[RunRecord]:
    """One run per N on a worker pool; records come back in the order of ``config.N``."""
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        return list(pool.map(lambda n: run_one(config, n), config.N))


MONOTONE_TOL = 1e-12


@dataclass
class SweepResult:
    """Coupled runs over N, gated on the envelope and on alpha_n(t_final) falling with N."""

    records: list[RunRecord]

    @property
    def final_alphas(self) -> list[tuple[int, float]]:
        """(N, alpha_n at the last sample) in N order."""
        pairs = [(r.N, r.rows[-1].alpha_n) for r in self.records if r.rows]
        return sorted(pairs)

    def monotonicity_report(self) -> MarginReport:
        """alpha_n(t_final) of each N against that of the next smaller N."""
        report = MarginReport("alpha_n(t_final) non-increasing in N")
        pairs = self.final_alphas
        for (n_prev, a_prev), (n, a) in zip(pairs, pairs[1:], strict=False):
            report.add(f"N={n} vs N={n_prev}", a, a_prev)
        return report

    @property
    def monotone(self) -> bool:
        return self.monotonicity_report().passed(MONOTONE_TOL)

    def envelope_report(self) -> MarginReport:
        report = MarginReport("envelope domination")
        for record in self.records:
            report.extend(record.envelope_report(), prefix=f"N={record.N} ")
        report.details["monotone"] = float(self.monotone)
        return report

    @property
    def passed(self) -> bool:
        return self.envelope_report().passed() and self.monotone

    def to_dict(self) -> dict[str, object]:
        envelope = self.envelope_report()
        return {
            "final_alphas": [{"N": n, "alpha_n": a} for n, a in self.final_alphas],
            "monotone": self.monotone,
            "monotone_worst_margin": self.monotonicity_report().worst_margin,
            "passed": self.passed,
            "envelope_worst_margin": envelope.worst_margin,
            "envelope_passed": envelope.passed(),
            "max_gram_drift": max((r.gram_drift for r in self.records), default=0.0),
            "max_energy_drift": max((r.energy_drift for r in self.records), default=0.0),
        }


def sweep(config: RunConfig, threads: int = 1, sizes: Sequence[int] | None = None) -> SweepResult:
    """Coupled runs for every N (``sizes`` overrides ``config.N``)."""
    if sizes is not None:
        config = config.model_copy(update={"N": list(sizes)})
    config = config.model_copy(update={"mode": "coupled"})
    with logfire.span("sweep", sizes=config.N, threads=threads):
        result = SweepResult(records=run_all(config, threads))
    logfire.info("Sweep finished", monotone=result.monotone, sizes=config.N)
    return result
