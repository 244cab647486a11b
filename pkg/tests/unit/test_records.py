"""Unit tests for run records and their CSV and JSON files."""

import csv
import json
from pathlib import Path

import pytest

from meanfield_lab.experiments.records import (
    RUN_COLUMNS,
    RunRecord,
    RunRow,
    alpha_at,
    write_csv,
    write_records,
)


def _row(t: float, alpha: float, **extra: float) -> RunRow:
    values = {column: 0.0 for column in RUN_COLUMNS[2:17]}
    values.update(t=t, alpha_n=alpha, alpha_m=2.0 * alpha)
    return RunRow(N=2, M=4, **values, **extra)


@pytest.fixture
def record() -> RunRecord:
    """Two samples with an envelope, the second with a decomposition."""
    return RunRecord(
        kind="coupled",
        N=2,
        M=4,
        dimension=6,
        weight="n",
        gamma=0.5,
        seed=0,
        rows=[
            _row(0.0, 0.0, envelope=0.0),
            _row(0.5, 0.1, envelope=0.3, t1=0.2, t2=0.0, t3=0.1, fd=0.3),
        ],
    )


class TestRunRecord:
    """Tests for RunRecord helpers."""

    def test_columns_start_with_sample_keys(self) -> None:
        assert RUN_COLUMNS[:4] == ("N", "M", "t", "alpha_n")
        assert RUN_COLUMNS[-1] == "fd"

    def test_envelope_report(self, record: RunRecord) -> None:
        report = record.envelope_report()

        assert report.passed()
        assert [m.margin for m in report.margins] == pytest.approx([0.0, 0.2])

    def test_budget_report_skips_missing(self, record: RunRecord) -> None:
        assert record.budget_report().margins == []

    def test_bounded_column_follows_weight(self, record: RunRecord) -> None:
        weighted = record.model_copy(update={"weight": "m(0.5)"})

        assert record.bounded_column == "alpha_n"
        assert weighted.bounded_column == "alpha_m"
        assert weighted.envelope_report().margins[1].lhs == pytest.approx(0.2)

    def test_derivative_gaps(self, record: RunRecord) -> None:
        assert record.derivative_gaps() == pytest.approx([0.0])

    def test_alpha_at(self, record: RunRecord) -> None:
        assert alpha_at(record, 0.5) == 0.1
        with pytest.raises(KeyError):
            alpha_at(record, 0.25)

    def test_series(self, record: RunRecord) -> None:
        assert record.times == [0.0, 0.5]
        assert record.series("alpha_m") == [0.0, 0.2]


class TestWriters:
    """Tests for CSV and JSON emission."""

    def test_missing_values_are_empty_cells(self, tmp_path: Path) -> None:
        path = write_csv([{"a": 1.5, "b": None}, {"a": 2}], tmp_path / "x.csv", ["a", "b"])

        with path.open(encoding="utf-8") as f:
            rows = list(csv.reader(f))

        assert rows == [["a", "b"], ["1.5", ""], ["2", ""]]

    def test_write_records(self, record: RunRecord, tmp_path: Path) -> None:
        csv_path, json_path = write_records([record], tmp_path / "out", "run")

        with csv_path.open(encoding="utf-8") as f:
            rows = list(csv.DictReader(f))
        payload = json.loads(json_path.read_text(encoding="utf-8"))

        assert csv_path.name == "run.csv"
        assert len(rows) == 2
        assert rows[0]["t1"] == ""
        assert float(rows[1]["t1"]) == 0.2
        assert payload[0]["kind"] == "coupled"
        assert len(payload[0]["rows"]) == 2
