"""Tests for the command-line interface."""

from pathlib import Path

import pytest
from click.testing import CliRunner

from logs.logger import setup_logging
from main import main

BENCH = str(Path(__file__).resolve().parent.parent / "scenarios" / "bench.env")


@pytest.fixture
def runner():
    yield CliRunner()
    # sinks installed inside invoke() point at the runner's closed stream
    setup_logging(level="WARNING")


def invoke(runner: CliRunner, *args: str):
    return runner.invoke(main, ["--log-level", "ERROR", *args])


def test_threshold(runner):
    result = invoke(runner, "threshold", "--config", BENCH, "--alpha", "0.3")
    assert result.exit_code == 0, result.output
    assert "tau*" in result.output
    assert "xi" in result.output


def test_dep_writes_csv(runner, tmp_path):
    out = tmp_path / "dep.csv"
    result = invoke(runner, "dep", "--config", BENCH, "--trials", "200", "--values", "10,20",
                    "--out", str(out), "--no-progress")
    assert result.exit_code == 0, result.output
    lines = out.read_text().splitlines()
    assert len(lines) == 3
    assert lines[0].startswith("p_max_dbm [dBm],alpha,p [W],tau [W]")


def test_dep_is_reproducible(runner, tmp_path):
    args = ["dep", "--config", BENCH, "--trials", "300", "--values", "15", "--seed", "9", "--no-progress"]
    invoke(runner, *args, "--out", str(tmp_path / "a.csv"))
    invoke(runner, *args, "--out", str(tmp_path / "b.csv"))
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_bad_scenario_key(runner, tmp_path):
    bad = tmp_path / "bad.env"
    bad.write_text("m=10\nwarp=9\n")
    result = invoke(runner, "threshold", "--config", str(bad))
    assert result.exit_code == 1


def test_unknown_preset(runner):
    result = invoke(runner, "preset", "fig42")
    assert result.exit_code == 2


def test_infeasible_optimization_still_writes_rows(runner, tmp_path):
    hopeless = tmp_path / "hopeless.env"
    hopeless.write_text("eps_sic=40\n")
    out = tmp_path / "opt.csv"
    result = invoke(runner, "optimize", "--config", str(hopeless), "--mode", "psr", "--values", "25",
                    "--baseline-draws", "3", "--out", str(out), "--no-progress")
    assert result.exit_code == 0, result.output
    header, row = out.read_text().splitlines()
    assert row.split(",")[3] == "0"


@pytest.mark.slow
def test_fig3_preset(runner, tmp_path):
    result = invoke(runner, "preset", "fig3", "--trials", "200", "--out", str(tmp_path), "--no-progress")
    assert result.exit_code == 0, result.output
    for name in ("fig3_stat.csv", "fig3_none.csv"):
        assert len((tmp_path / name).read_text().splitlines()) == 17
