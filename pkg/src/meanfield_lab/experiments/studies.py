"""Scaling tables over Fermi balls and semiclassical diagnostic runs."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import logfire
import numpy as np

from meanfield_lab.config.run_config import ScalingConfig, SemiclassicalConfig
from meanfield_lab.experiments.suites import SuiteResult
from meanfield_lab.meanfield.model import LatticeModel
from meanfield_lab.meanfield.orbitals import initial_orbitals
from meanfield_lab.scaling3d.fermi import (
    LIEB_THIRRING_CONSTANT,
    closed_shell_sizes,
    fermi_ball,
    fermi_ball_exchange_sum,
    fermi_ball_kinetic,
    lieb_thirring_margin,
)
from meanfield_lab.scaling3d.fits import PowerLawFit, fit_exponent
from meanfield_lab.scaling3d.potential import (
    mean_field_inf,
    mean_field_sup,
    scaling_constant_bound,
)
from meanfield_lab.semiclassical.diagnostics import (
    SemiclassicalDiagnostics,
    semiclassical_model,
    semiclassical_run,
)

SCALING_COLUMNS = (
    "N",
    "s",
    "L",
    "kinetic",
    "A",
    "sup",
    "scaled_sup",
    "constant",
    "scaled_corner",
    "lt_lhs",
    "lt_rhs",
    "exchange",
)


@dataclass
class ScalingStudy:
    """Long-format rows, fitted exponents and the pass/fail result."""

    rows: list[dict[str, float]] = field(default_factory=list)
    fits: dict[str, PowerLawFit] = field(default_factory=dict)
    result: SuiteResult = field(default_factory=lambda: SuiteResult("scaling"))

    def to_dict(self) -> dict[str, object]:
        return {
            "fits": {name: fit.to_dict() for name, fit in self.fits.items()},
            "result": self.result.to_dict(),
        }


def scaling_study(config: ScalingConfig) -> ScalingStudy:
    """Box potential, Lieb-Thirring and exchange scaling over closed shells."""
    study = ScalingStudy()
    shells = closed_shell_sizes(config.N_min, config.N_max)
    with logfire.span("scaling study", shells=len(shells), N_max=config.N_max):
        exchange: dict[int, float] = {}
        for N in shells:
            ball = fermi_ball(N, config.density)
            kinetic = fermi_ball_kinetic(ball)
            A = kinetic / N
            if N <= config.exchange_N_max:
                exchange[N] = fermi_ball_exchange_sum(ball)
            lt_lhs = (N / ball.volume) ** (5.0 / 3.0) * ball.volume
            for s in config.s_values:
                scale = float(N) ** (-(1.0 - s / 3.0))
                sup = mean_field_sup(s, N, config.density)
                row: dict[str, float] = {
                    "N": N,
                    "s": s,
                    "L": ball.L,
                    "kinetic": kinetic,
                    "A": A,
                    "sup": sup,
                    "scaled_sup": scale * sup,
                    "constant": scaling_constant_bound(s, A),
                    "scaled_corner": scale * mean_field_inf(s, N, config.density),
                    "lt_lhs": lt_lhs,
                    "lt_rhs": LIEB_THIRRING_CONSTANT * kinetic,
                }
                if N in exchange:
                    row["exchange"] = exchange[N]
                study.rows.append(row)

        result = study.result
        for row in study.rows:
            label = f"s={row['s']:g}"
            result.record(f"{label} scaled sup <= C(s, A)", row["constant"] - row["scaled_sup"])
            result.record(f"{label} scaled corner > 0", row["scaled_corner"])
        for N in closed_shell_sizes(7, config.N_max):
            result.absorb(lieb_thirring_margin(fermi_ball(N, config.density)), prefix="lt ")

        if len(shells) >= 2:
            for s in config.s_values:
                sups = [r["sup"] for r in study.rows if r["s"] == s]
                fit = fit_exponent(shells, sups)
                study.fits[f"potential s={s:g}"] = fit
                result.record_gap(
                    f"potential exponent s={s:g}",
                    abs(fit.exponent - (1.0 - s / 3.0)),
                    config.exponent_tolerance,
                )
        if len(exchange) >= 2:
            fit = fit_exponent(list(exchange), list(exchange.values()))
            study.fits["exchange"] = fit
            result.record_gap(
                "exchange exponent", abs(fit.exponent - 1.0), config.exchange_tolerance
            )
    logfire.info("Scaling study finished", passed=study.result.passed, shells=len(shells))
    return study


def _semiclassical_one(config: SemiclassicalConfig, N: int) -> SemiclassicalDiagnostics:
    rng = np.random.default_rng([config.seed, N])
    M = config.sites_for(N)
    model = semiclassical_model(LatticeModel.from_config(config.model, M, rng), N)
    orbitals = initial_orbitals(config.orbitals, model, N, rng)
    with logfire.span("semiclassical run", N=N, M=M, epsilon=model.epsilon):
        return semiclassical_run(
            model,
            orbitals,
            config.t_final,
            config.dt,
            modes=config.modes,
            exchange=config.exchange,
            record_every=config.record_every,
            coupled=config.coupled,
            sector_cap=config.sector_cap,
        )


def semiclassical_study(
    config: SemiclassicalConfig, threads: int = 1
) -> list[SemiclassicalDiagnostics]:
    """One semiclassical run per N, in the order of ``config.N``."""
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        return list(pool.map(lambda n: _semiclassical_one(config, n), config.N))
