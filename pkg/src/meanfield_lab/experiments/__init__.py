"""Named experiments: coupled and free-limit runs, sweeps, suites and studies."""

from meanfield_lab.experiments.records import (
    RUN_COLUMNS,
    RunRecord,
    RunRow,
    alpha_at,
    write_csv,
    write_json,
    write_records,
)
from meanfield_lab.experiments.runs import (
    SweepResult,
    run_all,
    run_coupled,
    run_free_limit,
    run_one,
    sweep,
)
from meanfield_lab.experiments.studies import (
    SCALING_COLUMNS,
    ScalingStudy,
    scaling_study,
    semiclassical_study,
)
from meanfield_lab.experiments.suites import (
    SUITE_NAMES,
    SuiteReport,
    SuiteResult,
    counting_suite,
    density_suite,
    estimates_suite,
    scaling3d_suite,
    verify_all,
)

__all__ = [
    "RUN_COLUMNS",
    "SCALING_COLUMNS",
    "SUITE_NAMES",
    "RunRecord",
    "RunRow",
    "ScalingStudy",
    "SuiteReport",
    "SuiteResult",
    "SweepResult",
    "alpha_at",
    "counting_suite",
    "density_suite",
    "estimates_suite",
    "run_all",
    "run_coupled",
    "run_free_limit",
    "run_one",
    "scaling3d_suite",
    "scaling_study",
    "semiclassical_study",
    "sweep",
    "verify_all",
    "write_csv",
    "write_json",
    "write_records",
]
