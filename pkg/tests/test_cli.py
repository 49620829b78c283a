"""Test the command-line front end."""

import csv
import io
import json

import pytest
from pearcey_gap.cli import EXIT_CHECKS_FAILED, EXIT_FAILURE, EXIT_OK, async_main, create_parser
from pearcey_gap.config import RunConfig, load_config, parse_range
from pydantic import ValidationError


def _csv_rows(text: str) -> list[dict[str, str]]:
    lines = text.splitlines()
    assert lines[0] == "# pearcey-gap v1.0.0"
    return list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))


class TestParser:
    def test_subcommands(self):
        """Test that each subcommand parses its own options."""
        parser = create_parser()
        args = parser.parse_args(["table", "--s", "2", "--ms", "8", "16"])
        assert args.command == "table"
        assert args.ms == [8, 16]
        args = parser.parse_args(["verify", "--only", "kernel", "surface"])
        assert args.only == ["kernel", "surface"]

    def test_unknown_suite(self):
        with pytest.raises(SystemExit):
            create_parser().parse_args(["verify", "--only", "nothing"])


class TestConfig:
    def test_parse_range(self):
        assert parse_range("4:8:9") == (4.0, 8.0, 9)
        with pytest.raises(ValueError):
            parse_range("4:8")

    def test_fit_defaults(self):
        config = RunConfig(command="fit-c")
        assert config.s_values[0] == 4.0 and config.s_values[-1] == 8.0
        assert len(config.s_values) == 9

    @pytest.mark.parametrize(
        "fields",
        [{"m": 7}, {"m": 500}, {"s": 0.0}, {"s": 11.0}, {"rho": 5.0}, {"s": 1.0, "s_range": "1:2:3"}, {"nope": 1}],
    )
    def test_invalid(self, fields):
        with pytest.raises(ValidationError):
            RunConfig(**fields)

    def test_precedence(self, tmp_path):
        """Flags override the file, which overrides defaults."""
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"rho": 0.5, "m": 8}))
        config = load_config(path, {"m": 10, "rho": None})
        assert config.rho == 0.5
        assert config.m == 10
        assert config.tolerance == 1e-12


async def test_chart(capsys):
    """Test the chart command on a tiny grid."""
    assert await async_main(["chart", "--nx", "3", "--ny", "3"]) == EXIT_OK
    rows = _csv_rows(capsys.readouterr().out)
    assert len(rows) == 9
    assert list(rows[0]) == ["x", "y", "sign_12", "sign_13", "sign_23"]


async def test_fit_synthetic(capsys):
    """Test that fit-c recovers the injected constant."""
    code = await async_main(["fit-c", "--synthetic", "--s-range", "4:8:9", "--format", "json"])
    assert code == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["version"] == "1.0.0"
    assert abs(payload["c_hat"] + 0.1) < 1e-6
    assert len(payload["samples"]) == 9


async def test_fit_outside_window(capsys):
    """Test that s outside [4, 8] is refused unless --allow-window is given."""
    assert await async_main(["fit-c", "--synthetic", "--s-range", "2:8:9"]) == EXIT_FAILURE
    capsys.readouterr()
    code = await async_main(["fit-c", "--synthetic", "--s-range", "2:8:9", "--allow-window", "--format", "json"])
    assert code == EXIT_OK
    assert abs(json.loads(capsys.readouterr().out)["c_hat"] + 0.1) < 1e-6


async def test_fit_synthetic_csv(tmp_path):
    out = tmp_path / "fit.csv"
    code = await async_main(["fit-c", "--synthetic", "--inject-c", "0.25", "--out", str(out)])
    assert code == EXIT_OK
    rows = _csv_rows(out.read_text())
    assert len(rows) == 9
    assert abs(float(rows[0]["G"]) - 0.25 - 0.3 * 4 ** (-2 / 3)) < 1e-12


async def test_gap_small_interval(capsys):
    """Test gap near the empty-interval limit."""
    assert await async_main(["gap", "--s", "1e-3", "--m", "8"]) == EXIT_OK
    (row,) = _csv_rows(capsys.readouterr().out)
    assert -1e-2 < float(row["F"]) < 0
    assert row["dF_ds"] != ""


async def test_gap_json_from_config(tmp_path, capsys):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"rho": 0.5, "m": 8, "format": "json"}))
    assert await async_main(["gap", "--config", str(path), "--s-range", "0.01:0.02:2"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert [r["rho"] for r in payload["rows"]] == [0.5, 0.5]
    assert [r["m"] for r in payload["rows"]] == [8, 8]


async def test_table(capsys):
    assert await async_main(["table", "--s", "0.5", "--m", "8", "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert [r["m"] for r in payload["rows"]] == [4, 8, 16]
    assert payload["rows"][-1]["abs_diff"] == 0.0


async def test_verify_one_suite(capsys):
    """Test verify restricted to a cheap suite."""
    assert await async_main(["verify", "--only", "surface"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["passed"] is True
    assert len(payload["checks"]) == 7


async def test_verify_failure_exit(capsys):
    """Test that failing checks give exit code 1."""
    assert await async_main(["verify", "--only", "surface", "--tol-scale", "1e-30"]) == EXIT_CHECKS_FAILED
    payload = json.loads(capsys.readouterr().out)
    assert "surface.series_orders" in payload["tolerance_limited"]


@pytest.mark.parametrize(
    "argv",
    [
        ["gap", "--s", "1", "--m", "7"],
        ["gap", "--s", "12"],
        ["gap", "--s", "1", "--verbose", "--quiet"],
        ["fit-c", "--synthetic", "--s-range", "4:8:3"],
    ],
)
async def test_invalid_input(argv):
    """Test that bad input and failed fits exit with code 2."""
    assert await async_main(argv) == EXIT_FAILURE


async def test_missing_config(tmp_path):
    assert await async_main(["gap", "--config", str(tmp_path / "absent.json")]) == EXIT_FAILURE
