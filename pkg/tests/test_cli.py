import json
from fractions import Fraction

import pytest
from click.testing import CliRunner

from src.cli import cli, format_decimal, format_exact
from src.errors import InconsistencyError, SymtestError


@pytest.fixture
def runner():
    return CliRunner()


class TestFormatting:
    def test_significant_digits(self):
        assert format_decimal(Fraction(1, 20)) == "0.0500000000000"
        assert format_decimal(Fraction(1, 3)) == "0.333333333333"
        assert format_decimal(1) == "1.00000000000"
        assert format_decimal(10) == "10.0000000000"

    def test_rounding_carry(self):
        assert format_decimal(Fraction(9999999999999, 10 ** 13)) == "1.00000000000"

    def test_exact(self):
        assert format_exact(Fraction(1, 8)) == "1/8 = 0.125000000000"


class TestBeta:
    def test_identity(self, runner):
        result = runner.invoke(cli, ["beta", "--subgroup", "identity", "--n", "3"])
        assert result.exit_code == 0
        assert result.output == "1/20 = 0.0500000000000\n"

    def test_t_symmetry_single_query(self, runner):
        result = runner.invoke(cli, ["beta", "--subgroup", "t", "--n", "1"])
        assert result.output.strip() == "1 = 1.00000000000"

    def test_tolerance(self, runner):
        result = runner.invoke(cli, ["beta", "--subgroup", "z", "--n", "2", "--eps", "0.5"])
        assert result.output.strip() == "1/8 = 0.125000000000"

    def test_numeric(self, runner):
        result = runner.invoke(cli, ["beta", "--subgroup", "z", "--n", "2", "--method", "numeric"])
        assert result.exit_code == 0
        assert float(result.output) == pytest.approx(0.25, abs=1e-8)

    @pytest.mark.parametrize(
        "args",
        [
            ["--subgroup", "x", "--n", "2"],
            ["--subgroup", "z", "--n", "-1"],
            ["--subgroup", "z", "--n", "2", "--eps", "2"],
            ["--subgroup", "z", "--n", "2", "--eps", "abc"],
        ],
    )
    def test_invalid_flags(self, runner, args):
        assert runner.invoke(cli, ["beta", *args]).exit_code == 2

    def test_size_guard(self, runner):
        result = runner.invoke(cli, ["beta", "--subgroup", "identity", "--n", "5", "--method", "numeric"])
        assert result.exit_code == 3


class TestCurve:
    def test_stdout(self, runner):
        result = runner.invoke(cli, ["curve", "--n-max", "2"])
        assert result.exit_code == 0
        assert result.output.splitlines() == [
            "n,beta_identity,beta_z,beta_t",
            "1,0.250000000000,0.500000000000,1.00000000000",
            "2,0.100000000000,0.250000000000,0.333333333333",
        ]

    def test_rejects_zero(self, runner):
        assert runner.invoke(cli, ["curve", "--n-max", "0"]).exit_code == 2

    def test_files_are_reproducible(self, runner, tmp_path):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        svg = tmp_path / "curve.svg"
        assert runner.invoke(cli, ["curve", "--n-max", "6", "--output", str(first), "--svg", str(svg)]).exit_code == 0
        assert runner.invoke(cli, ["curve", "--n-max", "6", "--output", str(second)]).exit_code == 0
        assert first.read_bytes() == second.read_bytes()
        assert len(first.read_text().splitlines()) == 7
        content = svg.read_text()
        assert content.startswith("<?xml") and "<svg" in content

    def test_unwritable_output(self, runner, tmp_path):
        target = tmp_path / "missing" / "curve.csv"
        result = runner.invoke(cli, ["curve", "--n-max", "3", "--output", str(target)])
        assert result.exit_code == 4
        assert not target.exists()


class TestOtherCommands:
    def test_samples(self, runner):
        result = runner.invoke(cli, ["samples", "--subgroup", "identity", "--delta", "0.05"])
        assert result.output.strip() == "n*=3, beta=1/20"

    def test_samples_with_tables(self, runner):
        result = runner.invoke(cli, ["samples", "--subgroup", "t", "--delta", "1/3", "--tables"])
        assert result.output.strip() == "n*=2, beta=1/3"

    def test_samples_out_of_range(self, runner):
        assert runner.invoke(cli, ["samples", "--subgroup", "identity", "--delta", "1e-30"]).exit_code == 3
        assert runner.invoke(cli, ["samples", "--subgroup", "identity", "--delta", "0"]).exit_code == 2

    def test_branching_json(self, runner):
        result = runner.invoke(cli, ["branching", "--subgroup", "t", "--n", "2"])
        payload = json.loads(result.output)
        kinds = {json.dumps(entry["eta"], sort_keys=True) for entry in payload["entries"]}
        assert len(kinds) == 3

    def test_branching_table(self, runner):
        result = runner.invoke(cli, ["branching", "--subgroup", "z", "--n", "3", "--format", "table"])
        assert result.exit_code == 0
        assert "torus(" in result.output

    def test_dmax(self, runner):
        result = runner.invoke(cli, ["dmax", "--subgroup", "identity", "--n", "2", "--method", "both"])
        lines = result.output.splitlines()
        assert lines[0] == "exact: 10 = 10.0000000000"
        assert float(lines[1].split(": ")[1]) == pytest.approx(10.0, rel=1e-8)

    def test_protocol_export(self, runner, tmp_path):
        target = tmp_path / "protocol.json"
        result = runner.invoke(cli, ["protocol", "--subgroup", "z", "--n", "2", "--output", str(target)])
        assert result.exit_code == 0
        payload = json.loads(target.read_text())
        assert payload["reference_free"] is True
        assert payload["target_beta"] == "1/4"

    def test_internal_failure_exit_code(self, runner, mocker):
        mocker.patch(
            "src.cli.commands.branching_table", side_effect=InconsistencyError("dimension check failed")
        )
        result = runner.invoke(cli, ["branching", "--subgroup", "z", "--n", "2"])
        assert result.exit_code == 5
        assert "internal error: dimension check failed" in result.output

    def test_usage_errors_stay_distinct(self, runner, mocker):
        mocker.patch("src.cli.commands.branching_table", side_effect=SymtestError("bad request"))
        assert runner.invoke(cli, ["branching", "--subgroup", "z", "--n", "2"]).exit_code == 2

    def test_version(self, runner):
        result = runner.invoke(cli, ["--version"])
        assert result.exit_code == 0
        assert "symtest" in result.output

    @pytest.mark.slow
    def test_validate(self, runner):
        result = runner.invoke(cli, ["validate", "--subgroup", "z", "--n", "2", "--shots", "100000", "--seed", "7"])
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["pass"] is True
        assert payload["cross_validation"]["pass"] is True

    def test_validate_rejects_few_shots(self, runner):
        result = runner.invoke(
            cli, ["validate", "--subgroup", "z", "--n", "1", "--shots", "500", "--mode", "monte_carlo"]
        )
        assert result.exit_code == 2
