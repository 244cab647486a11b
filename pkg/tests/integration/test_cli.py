"""Integration tests for the mflab command line."""

import csv
import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from meanfield_lab.cli import app, main
from meanfield_lab.experiments.records import RUN_COLUMNS

runner = CliRunner()

RUN_YAML = """
run:
  N: [2, 3]
  t_final: 0.2
  dt: 0.01
  record_every: 10
  seed: 4
sweep:
  N: [2, 3]
  t_final: 0.2
  dt: 0.01
  record_every: 10
verify:
  sizes: [2]
  samples: 3
  suites: [counting, density]
semiclassical:
  N: [2]
  t_final: 0.05
  dt: 0.01
  record_every: 5
scaling:
  N_min: 7
  N_max: 100
  exchange_N_max: 1
"""


@pytest.fixture
def config_file(tmp_path: Path) -> Path:
    path = tmp_path / "lab.yml"
    path.write_text(RUN_YAML, encoding="utf-8")
    return path


def _csv_rows(path: Path) -> list[dict[str, str]]:
    with path.open(encoding="utf-8") as f:
        return list(csv.DictReader(f))


class TestVersion:
    """Tests for the version command."""

    def test_version(self) -> None:
        result = runner.invoke(app, ["version"])

        assert result.exit_code == 0
        assert "mflab version" in result.output

    def test_main_returns_exit_codes(self) -> None:
        assert main(["version"]) == 0
        assert main(["no-such-command"]) == 2


class TestVerifyCommand:
    """Tests for mflab verify."""

    def test_verify_passes(self, config_file: Path, tmp_path: Path) -> None:
        out = tmp_path / "out"

        result = runner.invoke(app, ["verify", "-c", str(config_file), "-o", str(out), "-q"])

        assert result.exit_code == 0, result.output
        rows = _csv_rows(out / "verify.csv")
        assert [row["suite"] for row in rows] == ["counting", "density"]
        assert json.loads((out / "verify.json").read_text())["passed"] is True

    def test_size_flag_overrides_config(self, config_file: Path, tmp_path: Path) -> None:
        out = tmp_path / "out"

        result = runner.invoke(
            app, ["verify", "-c", str(config_file), "-o", str(out), "-n", "3", "-q"]
        )

        assert result.exit_code == 0, result.output
        assert json.loads((out / "verify.json").read_text())["sizes"] == [3]

    def test_unknown_suite_is_config_error(self, tmp_path: Path) -> None:
        path = tmp_path / "bad.yml"
        path.write_text("verify:\n  suites: [spectra]\n", encoding="utf-8")

        result = runner.invoke(app, ["verify", "-c", str(path), "-o", str(tmp_path)])

        assert result.exit_code == 2
        assert "verify.suites" in result.output

    def test_missing_config_file(self, tmp_path: Path) -> None:
        result = runner.invoke(app, ["verify", "-c", str(tmp_path / "absent.yml")])

        assert result.exit_code == 2


class TestRunCommand:
    """Tests for mflab run."""

    def test_run_writes_long_csv(self, config_file: Path, tmp_path: Path) -> None:
        out = tmp_path / "out"

        result = runner.invoke(app, ["run", "-c", str(config_file), "-o", str(out)])

        assert result.exit_code == 0, result.output
        with (out / "run.csv").open(encoding="utf-8") as f:
            header = next(csv.reader(f))
        assert tuple(header) == RUN_COLUMNS
        rows = _csv_rows(out / "run.csv")
        assert len(rows) == 2 * 3
        assert rows[0]["budget"] == ""
        assert [r["seed"] for r in json.loads((out / "run.json").read_text())] == [4, 4]

    def test_config_is_required(self, tmp_path: Path) -> None:
        result = runner.invoke(app, ["run", "-o", str(tmp_path)])

        assert result.exit_code == 2
        assert "--config" in result.output

    def test_unknown_key(self, tmp_path: Path) -> None:
        path = tmp_path / "typo.yml"
        path.write_text("run:\n  t_fnal: 1.0\n", encoding="utf-8")

        result = runner.invoke(app, ["run", "-c", str(path), "-o", str(tmp_path)])

        assert result.exit_code == 2
        assert "run.t_fnal" in result.output

    def test_seed_precedence(
        self, config_file: Path, tmp_path: Path, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """Flag beats environment, environment beats the file."""
        monkeypatch.setenv("MFLAB_SEED", "11")

        env_out, flag_out = tmp_path / "env", tmp_path / "flag"
        runner.invoke(app, ["run", "-c", str(config_file), "-o", str(env_out), "-q"])
        runner.invoke(
            app, ["run", "-c", str(config_file), "-o", str(flag_out), "--seed", "9", "-q"]
        )

        assert json.loads((env_out / "run.json").read_text())[0]["seed"] == 11
        assert json.loads((flag_out / "run.json").read_text())[0]["seed"] == 9

    def test_invalid_environment(
        self, config_file: Path, tmp_path: Path, monkeypatch: pytest.MonkeyPatch
    ) -> None:
        monkeypatch.setenv("MFLAB_THREADS", "0")

        result = runner.invoke(app, ["run", "-c", str(config_file), "-o", str(tmp_path)])

        assert result.exit_code == 2
        assert "MFLAB_THREADS" in result.output


class TestStudyCommands:
    """Tests for sweep, scaling and semiclassical."""

    def test_sweep(self, config_file: Path, tmp_path: Path) -> None:
        result = runner.invoke(app, ["sweep", "-c", str(config_file), "-o", str(tmp_path), "-q"])

        assert result.exit_code == 0, result.output
        summary = json.loads((tmp_path / "sweep_summary.json").read_text())
        assert summary["envelope_passed"] is True
        assert [entry["N"] for entry in summary["final_alphas"]] == [2, 3]
        assert len(_csv_rows(tmp_path / "sweep.csv")) == 6

    def test_sweep_fails_when_alpha_grows_with_N(self, tmp_path: Path) -> None:
        """Open-shell ground states under a ramp field: alpha_n(1) is larger at N=4 than N=3."""
        path = tmp_path / "open_shell.yml"
        path.write_text(
            "sweep:\n  N: [3, 4]\n  model: {}\n  orbitals: lowest\n  record_every: 500\n",
            encoding="utf-8",
        )

        result = runner.invoke(app, ["sweep", "-c", str(path), "-o", str(tmp_path), "-q"])

        assert result.exit_code == 1, result.output
        summary = json.loads((tmp_path / "sweep_summary.json").read_text())
        assert summary["envelope_passed"] is True
        assert summary["monotone"] is False
        assert summary["passed"] is False

    def test_scaling(self, config_file: Path, tmp_path: Path) -> None:
        result = runner.invoke(
            app, ["scaling", "-c", str(config_file), "-o", str(tmp_path), "-q"]
        )

        assert result.exit_code == 0, result.output
        rows = _csv_rows(tmp_path / "scaling.csv")
        assert {row["N"] for row in rows} == {"7", "19", "27", "33", "57", "81", "93"}
        assert rows[0]["exchange"] == ""

    def test_semiclassical(self, config_file: Path, tmp_path: Path) -> None:
        result = runner.invoke(
            app, ["semiclassical", "-c", str(config_file), "-o", str(tmp_path), "-q"]
        )

        assert result.exit_code == 0, result.output
        rows = _csv_rows(tmp_path / "semiclassical.csv")
        assert len(rows) == 2
        assert {"phase_k1", "gradient", "alpha_n", "envelope"} <= set(rows[0])
