import json
import math

import pytest

from lamedisc import __version__
from lamedisc.cli import app
from lamedisc.commands import verify as verify_command
from lamedisc.special_functions import Modulus, ellip_K
from lamedisc.studies.sweep import CSV_FIELDS, POINT_KEYS, read_sweep_csv
from lamedisc.studies.verification import PropertyResult


def parse_json(output: str) -> dict:
    return json.loads(output[output.index("{") : output.rindex("}") + 1])


def test_version(runner):
    result = runner.invoke(app, ["version"])
    assert result.exit_code == 0
    assert __version__ in result.output


class TestPoint:
    def test_worked_example_json(self, runner):
        result = runner.invoke(app, ["point", "--h", "6", "--nu", "0.5", "--tau", "5", "--json"])
        assert result.exit_code == 0, result.output
        payload = parse_json(result.output)
        assert tuple(payload) == POINT_KEYS
        assert payload["approx"] == pytest.approx(-1.274528, abs=5e-6)
        assert payload["bound"] == pytest.approx(0.066641, abs=5e-6)
        assert payload["verdict"] == "ProvablyStable"
        assert abs(payload["k"] - 0.993262) < 5e-7

    def test_degree_zero(self, runner):
        result = runner.invoke(app, ["point", "--h", "4", "--nu", "0", "--k", "0.5", "--json"])
        assert result.exit_code == 0, result.output
        payload = parse_json(result.output)
        expected = 2.0 * math.cos(4.0 * ellip_K(Modulus.from_k(0.5)))
        assert payload["D"] == pytest.approx(expected, abs=1e-8)
        assert payload["bound"] == 0.0

    def test_numbers_are_plain_decimals(self, runner):
        args = ["point", "--h", "6", "--nu", "0.5", "--kprime", "0.3", "--json"]
        result = runner.invoke(app, args)
        assert result.exit_code == 0, result.output
        text = result.output[result.output.index("{") :]
        assert "NaN" not in text
        assert "Infinity" not in text
        for key, value in parse_json(text).items():
            if key != "verdict" and value is not None:
                assert isinstance(value, float)

    def test_omega_undefined_exits_2(self, runner):
        result = runner.invoke(app, ["point", "--h", "1", "--nu", "2", "--tau", "5"])
        assert result.exit_code == 2
        assert "OmegaUndefined" in result.output

    @pytest.mark.parametrize(
        "modulus",
        [[], ["--k", "0.5", "--tau", "1"], ["--k", "0.5", "--kprime", "0.5", "--tau", "1"]],
    )
    def test_exactly_one_modulus(self, runner, modulus):
        result = runner.invoke(app, ["point", "--h", "6", "--nu", "0.5", *modulus])
        assert result.exit_code == 2

    def test_invalid_modulus_exits_2(self, runner):
        result = runner.invoke(app, ["point", "--h", "6", "--nu", "0.5", "--k", "1.0"])
        assert result.exit_code == 2
        assert "InvalidModulus" in result.output

    def test_tau_beyond_float_range_exits_2(self, runner):
        result = runner.invoke(app, ["point", "--h", "6", "--nu", "0.5", "--tau", "1000"])
        assert result.exit_code == 2
        assert "InvalidModulus" in result.output

    def test_table_output(self, runner):
        result = runner.invoke(app, ["point", "--h", "6", "--nu", "0.5", "--tau", "5"])
        assert result.exit_code == 0, result.output
        assert "ProvablyStable" in result.output


class TestSweep:
    def test_csv_to_stdout(self, runner):
        args = ["sweep", "--h", "6", "--nu", "0.5", "--tau-min", "4", "--tau-max", "6",
                "--steps", "3"]
        result = runner.invoke(app, args)
        assert result.exit_code == 0, result.output
        lines = [line for line in result.output.splitlines() if line.count(",") == 9]
        assert lines[0] == ",".join(CSV_FIELDS)
        assert len(lines) == 4

    def test_csv_file(self, runner, tmp_path):
        out = tmp_path / "fig.csv"
        args = ["sweep", "--h", "6", "--nu", "0.5", "--tau-min", "3", "--tau-max", "8",
                "--steps", "6", "--out", str(out)]
        result = runner.invoke(app, args)
        assert result.exit_code == 0, result.output
        rows = read_sweep_csv(out)
        assert [row.tau for row in rows] == [3.0, 4.0, 5.0, 6.0, 7.0, 8.0]
        assert all(abs(row.D - row.approx) <= row.bound for row in rows)

    def test_row_matches_point_output(self, runner, tmp_path):
        out = tmp_path / "fig.csv"
        runner.invoke(app, ["sweep", "--h", "6", "--nu", "0.5", "--tau-min", "4",
                            "--tau-max", "6", "--steps", "3", "--out", str(out)])
        row = read_sweep_csv(out)[1]
        result = runner.invoke(app, ["point", "--h", "6", "--nu", "0.5", "--tau", "5", "--json"])
        payload = parse_json(result.output)
        for name in CSV_FIELDS[:-1]:
            assert payload[name] == getattr(row, name)
        assert payload["verdict"] == str(row.verdict)

    def test_bad_grid_exits_2(self, runner):
        result = runner.invoke(app, ["sweep", "--h", "6", "--nu", "0.5", "--steps", "1"])
        assert result.exit_code == 2


class TestVerify:
    def fake_suite(self, passed):
        def run_suite(seed, grid_density, cfg, on_result=None):
            results = [
                PropertyResult("worked_example", True, 1e-6, "k at tau=5"),
                PropertyResult("wronskian_conservation", passed, 1e-10 if passed else -1e-4, "#0"),
            ]
            for r in results:
                if on_result:
                    on_result(r)
            return results

        return run_suite

    def test_all_pass_exits_0(self, runner, monkeypatch):
        monkeypatch.setattr(verify_command, "run_suite", self.fake_suite(True))
        result = runner.invoke(app, ["verify", "--json"])
        assert result.exit_code == 0, result.output
        summary = parse_json(result.output)
        assert summary["passed"] is True
        assert [p["name"] for p in summary["properties"]] == [
            "worked_example",
            "wronskian_conservation",
        ]

    def test_failure_exits_1(self, runner, monkeypatch):
        monkeypatch.setattr(verify_command, "run_suite", self.fake_suite(False))
        result = runner.invoke(app, ["verify", "--seed", "4"])
        assert result.exit_code == 1
        assert "1/2" in result.output

    @pytest.mark.slow
    def test_real_suite(self, runner):
        result = runner.invoke(app, ["verify", "--json"])
        assert result.exit_code == 0, result.output

    @pytest.mark.slow
    def test_corrupted_tolerance_fails(self, runner):
        result = runner.invoke(app, ["verify", "--tol", "1e-3", "--json"])
        assert result.exit_code == 1
        summary = parse_json(result.output)
        wronskian = next(p for p in summary["properties"] if p["name"] == "wronskian_conservation")
        assert wronskian["passed"] is False
