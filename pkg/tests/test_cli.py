# tests/test_cli.py

import csv
import io
import json

import pytest
from click.testing import CliRunner

import cli as cli_module
from models.report_model import SuiteFailure, SuiteResult
from qcalculus.core.scalar import to_string
from qcalculus.families.polys import Q
from services import calc_service


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def invoke(runner: CliRunner, *args: str):
    return runner.invoke(cli_module.cli, list(args))


class TestFamily:
    def test_psi_zero(self, runner):
        result = invoke(runner, "family", "--name", "psi", "--n", "0")
        assert result.exit_code == 0
        assert result.output.splitlines()[0] == "1"

    def test_h_one(self, runner):
        result = invoke(runner, "family", "--name", "h", "--n", "1")
        assert result.output.splitlines()[0] == "x"

    def test_hermite_text(self, runner):
        result = invoke(runner, "family", "--name", "hermite", "--n", "2", "--format", "text")
        lines = result.output.splitlines()
        assert lines[0] == "-1 + s^4 + 4*x^2"
        assert lines[1:] == ["x^0: (-1 + s^4)/(1)", "x^1: (0)/(1)", "x^2: (4)/(1)"]

    def test_json_is_deterministic(self, runner):
        first = invoke(runner, "family", "--name", "hermite", "--n", "2", "--format", "json")
        second = invoke(runner, "family", "--name", "hermite", "--n", "2", "--format", "json")
        assert first.output == second.output
        assert json.loads(first.output) == {
            "family": "hermite",
            "n": 2,
            "coeffs_x": ["(-1 + s^4)/(1)", "(0)/(1)", "(4)/(1)"],
        }

    def test_csv(self, runner):
        result = invoke(runner, "family", "--name", "hermite", "--n", "2", "--format", "csv", "--q", "0.25", "--x", "1")
        rows = list(csv.reader(io.StringIO(result.output)))
        assert rows[0] == ["n", "q", "x", "value"]
        assert len(rows) == 2
        assert float(rows[1][3]) == pytest.approx(3.25)

    def test_csv_default_grid(self, runner):
        result = invoke(runner, "family", "--name", "psi", "--n", "3", "--format", "csv")
        assert len(result.output.splitlines()) == 6

    def test_unknown_family(self, runner):
        assert invoke(runner, "family", "--name", "laguerre", "--n", "2").exit_code == 2

    def test_h_past_degree_thirteen(self, runner):
        result = invoke(runner, "family", "--name", "h", "--n", "14", "--format", "json")
        assert result.exit_code == 0
        assert len(json.loads(result.output)["coeffs_x"]) == 15

    def test_index_above_limit(self, runner):
        result = invoke(runner, "family", "--name", "hermite", "--n", "5000")
        assert result.exit_code == 2
        assert "exceeds the limit" in result.output


class TestEval:
    def test_float_path(self, runner):
        result = invoke(runner, "eval", "--name", "hermite", "--n", "2", "--x", "1", "--q", "0.25")
        assert result.exit_code == 0
        assert float(result.output) == pytest.approx(3.25)

    def test_exact_path(self, runner):
        result = invoke(runner, "eval", "--name", "psi", "--n", "1", "--x", "1/2", "--s", "1/2")
        assert result.output.strip() == "1"

    def test_constant(self, runner):
        result = invoke(runner, "eval", "--name", "hermite", "--n", "0", "--x", "0.7", "--q", "0.3")
        assert float(result.output) == 1.0

    def test_json(self, runner):
        result = invoke(runner, "eval", "--name", "hermite", "--n", "2", "--x", "1", "--s", "1/2", "--format", "json")
        assert json.loads(result.output) == {"family": "hermite", "n": 2, "mode": "exact", "x": "1", "s": "1/2", "value": "49/16"}

    def test_irrational_s(self, runner):
        result = invoke(runner, "eval", "--name", "hermite", "--n", "2", "--x", "1", "--s", "sqrt(2)/2")
        assert result.exit_code == 2
        assert "not an exact rational" in result.output

    @pytest.mark.parametrize("extra", [[], ["--s", "1/2", "--q", "0.25"]])
    def test_exactly_one_of_s_and_q(self, runner, extra):
        result = invoke(runner, "eval", "--name", "hermite", "--n", "2", "--x", "1", *extra)
        assert result.exit_code == 2

    def test_q_out_of_range(self, runner):
        result = invoke(runner, "eval", "--name", "hermite", "--n", "2", "--x", "1", "--q", "1.5")
        assert result.exit_code == 2

    def test_rational_q(self, runner):
        result = invoke(runner, "eval", "--name", "hermite", "--n", "2", "--x", "1", "--q", "1/4")
        assert result.exit_code == 0
        assert float(result.output) == pytest.approx(3.25)


class TestConvert:
    def test_row(self, runner):
        result = invoke(runner, "convert", "--direction", "psi-to-hermite", "--n", "2", "--format", "json")
        data = json.loads(result.output)
        assert data["weights"] == [
            {"k": 0, "weight": "(1)/(1)"},
            {"k": 1, "weight": to_string((1 - Q) / Q)},
        ]

    def test_text(self, runner):
        result = invoke(runner, "convert", "--direction", "hermite-to-psi", "--n", "3")
        assert result.output.splitlines()[0] == "hermite-to-psi n=3"
        assert result.output.splitlines()[2].startswith("k=1 Psi_1: ")


class TestVerify:
    def test_passing_suite(self, runner):
        result = invoke(runner, "verify", "--suite", "dq-psi", "--max-n", "4")
        assert result.exit_code == 0
        assert "0 failures [PASS]" in result.output

    def test_json(self, runner):
        result = invoke(runner, "verify", "--suite", "inverse", "--max-n", "4", "--format", "json")
        data = json.loads(result.output)
        assert data["suite"] == "inverse"
        assert data["failures"] == []
        assert "wall_time" not in data

    def test_failures_exit_one(self, runner, monkeypatch):
        def failing(name, *args):
            failure = SuiteFailure(identity="dq-psi", parameters={"n": 3}, residual="(1)/(1)")
            return SuiteResult(suite=name, cases_run=1, failures=[failure])

        monkeypatch.setattr(calc_service, "verify", failing)
        result = invoke(runner, "verify", "--suite", "dq-psi")
        assert result.exit_code == 1
        assert "FAIL dq-psi [n=3] residual=(1)/(1)" in result.output

    def test_unknown_suite(self, runner):
        assert invoke(runner, "verify", "--suite", "nope").exit_code == 2

    def test_bound_above_limit(self, runner):
        result = invoke(runner, "verify", "--suite", "dq-h", "--max-n", "1000")
        assert result.exit_code == 2
        assert "exceeds the limit" in result.output


class TestCharacterize:
    def test_below_minimum(self, runner):
        assert invoke(runner, "characterize", "--max-n", "3").exit_code == 2

    def test_sample_writes_report(self, runner, tmp_path):
        out = tmp_path / "report.json"
        result = invoke(
            runner, "characterize", "--max-n", "4", "--a1", "1", "--a2", "0", "--s", "1/2", "--out", str(out)
        )
        assert result.exit_code == 0
        report = json.loads(out.read_text())
        assert report["outcome"] == "ForcedHermite"
        assert report["components"][2]["witness"]["residual"]

    def test_ten_rows(self, runner):
        result = invoke(runner, "characterize", "--max-n", "10", "--a1", "1", "--a2", "0", "--s", "1/2")
        assert result.exit_code == 0

    def test_case_one_only(self, runner):
        result = invoke(runner, "characterize", "--max-n", "4", "--no-samples", "--format", "json")
        assert result.exit_code == 0
        assert json.loads(result.output)["complete"] is False

    def test_unbalanced_samples(self, runner):
        result = invoke(runner, "characterize", "--max-n", "4", "--a1", "1", "--s", "1/2")
        assert result.exit_code == 2

    def test_invalid_sample(self, runner):
        result = invoke(runner, "characterize", "--max-n", "4", "--a1", "0", "--a2", "0", "--s", "1/2")
        assert result.exit_code == 2
