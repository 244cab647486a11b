"""Run records and their CSV / JSON emission.

CSV files are long format: one row per (N, t) sample, columns in the order of
``RUN_COLUMNS``. Optional fields are written as empty cells.
"""

import csv
import json
from collections.abc import Iterable, Mapping, Sequence
from pathlib import Path
from typing import Any

import logfire
import numpy as np
from pydantic import BaseModel, Field

from meanfield_lab.estimates.margins import MarginReport


class RunRow(BaseModel):
    """One sample of a run."""

    N: int
    M: int
    t: float
    alpha_n: float
    alpha_m: float
    trace: float
    hs: float
    op: float
    hartree_energy: float
    exact_energy: float
    D0: float
    D1: float
    D2: float
    D3: float
    D4: float
    D: float
    rate: float
    envelope: float | None = None
    budget: float | None = None
    t1: float | None = None
    t2: float | None = None
    t3: float | None = None
    fd: float | None = None


RUN_COLUMNS: tuple[str, ...] = tuple(RunRow.model_fields)


class RunRecord(BaseModel):
    """All samples of one run plus its integrator diagnostics."""

    kind: str = Field(description="coupled or free_limit")
    N: int
    M: int
    dimension: int
    weight: str = Field(description="Weight bounded by the envelope or budget column")
    gamma: float
    delta: float | None = None
    seed: int
    gram_drift: float = 0.0
    energy_drift: float = 0.0
    rows: list[RunRow] = Field(default_factory=list)

    @property
    def times(self) -> list[float]:
        return [row.t for row in self.rows]

    def series(self, column: str) -> list[float]:
        return [float(getattr(row, column)) for row in self.rows]

    @property
    def bounded_column(self) -> str:
        return "alpha_n" if self.weight == "n" else "alpha_m"

    def envelope_report(self) -> MarginReport:
        """envelope(t) - alpha(t) on every row that carries an envelope."""
        report = MarginReport(f"envelope N={self.N}", details={"N": float(self.N)})
        for row in self.rows:
            if row.envelope is not None:
                report.add(f"t={row.t:.6g}", getattr(row, self.bounded_column), row.envelope)
        return report

    def budget_report(self) -> MarginReport:
        """alpha_m(t) against alpha_m(0) plus the integrated budget."""
        report = MarginReport(f"free-limit budget N={self.N}", details={"N": float(self.N)})
        for row in self.rows:
            if row.budget is not None:
                report.add(f"t={row.t:.6g}", row.alpha_m, row.budget)
        return report

    def derivative_gaps(self) -> list[float]:
        """|t1 + t2 + t3 - fd| / (1 + |fd|) on rows with a decomposition."""
        gaps = []
        for row in self.rows:
            if row.t1 is None or row.t2 is None or row.t3 is None or row.fd is None:
                continue
            total = row.t1 + row.t2 + row.t3
            gaps.append(abs(total - row.fd) / (1.0 + abs(row.fd)))
        return gaps


def alpha_at(record: RunRecord, t: float, tol: float = 1e-9) -> float:
    """alpha_n of the sample at time t."""
    for row in record.rows:
        if abs(row.t - t) <= tol:
            return row.alpha_n
    raise KeyError(f"time {t} not sampled in run N={record.N}")


def _cell(value: Any) -> Any:
    if value is None:
        return ""
    if isinstance(value, float | np.floating):
        return repr(float(value))
    return value


def write_csv(rows: Iterable[Mapping[str, Any]], path: Path, columns: Sequence[str]) -> Path:
    """Write rows with a fixed column order; missing keys become empty cells."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(column)) for column in columns])
    logfire.info("Wrote CSV", path=str(path))
    return path


def write_json(payload: Any, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=False), encoding="utf-8")
    logfire.info("Wrote JSON", path=str(path))
    return path


def write_records(records: Sequence[RunRecord], out_dir: Path, stem: str) -> list[Path]:
    """``<stem>.csv`` with every row of every record and ``<stem>.json`` with the records."""
    rows = [row.model_dump() for record in records for row in record.rows]
    csv_path = write_csv(rows, out_dir / f"{stem}.csv", RUN_COLUMNS)
    json_path = write_json(
        [record.model_dump(mode="json") for record in records], out_dir / f"{stem}.json"
    )
    return [csv_path, json_path]
