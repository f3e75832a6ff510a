"""Tests for experiment specs, sweep runners, presets and CSV output."""

import math
from collections import defaultdict

import numpy as np
import pytest

from channel.propagation import sample_channels
from config.scenario import SystemConfig
from experiments.csv_writer import emit_csv, read_csv, trace_path
from experiments.models import (
    ExperimentKind,
    ExperimentSpec,
    RunMode,
    SweepParameter,
    SweepSpec,
    WcsiMode,
    make_table,
)
from experiments.presets import PRESETS, get_preset
from experiments.runner import random_phase_baseline, run_dep_analysis, run_experiment, trace_columns
from numerics.rng import RngStream
from rates.capacity import Mode
from utils.exceptions import OutputError


@pytest.fixture
def near_backscatter(bench_config) -> SystemConfig:
    """Backscatter device 3.5 m from the IRS, where the B-IRS loss is about 0 dB."""
    return bench_config.with_overrides(backscatter_position=(20.0, 21.5))


def dep_spec(config: SystemConfig, **fields) -> ExperimentSpec:
    defaults = dict(
        name="dep-test",
        kind=ExperimentKind.DEP,
        scenario=config,
        sweep=SweepSpec(parameter=SweepParameter.P_MAX_DBM, values=(10.0, 20.0)),
        trials=4000,
        seed=1,
    )
    defaults.update(fields)
    return ExperimentSpec(**defaults)


class TestSpecs:
    def test_values_from_string(self):
        assert SweepSpec(parameter=SweepParameter.ETA, values="2, 5,10").values == (2.0, 5.0, 10.0)

    def test_power_sweep_converts_dbm(self, published_config):
        spec = dep_spec(published_config)
        assert spec.scenario_at(30.0).p_max == pytest.approx(1.0)

    def test_integer_sweep(self, published_config):
        spec = dep_spec(published_config, sweep=SweepSpec(parameter=SweepParameter.NUM_ELEMENTS, values=(12.0,)))
        assert spec.scenario_at(12.0).num_elements == 12

    def test_alpha_sweep_keeps_scenario(self, published_config):
        spec = dep_spec(published_config, sweep=SweepSpec(parameter=SweepParameter.ALPHA, values=(0.5,)))
        assert spec.scenario_at(0.5) == published_config
        assert spec.alpha_at(0.5) == 0.5
        assert dep_spec(published_config).alpha_at(10.0) == 0.2

    def test_run_modes(self):
        assert RunMode.BOTH.modes() == (Mode.PSR, Mode.CSR)
        assert RunMode.CSR.modes() == (Mode.CSR,)


class TestResultTable:
    def test_missing_columns_are_nan(self):
        table = make_table([("x", "dBm"), ("y", "")])
        table.add_row({"x": 1.0})
        assert math.isnan(table.column("y")[0])
        assert table.records() == [{"x": 1.0, "y": table.column("y")[0]}]

    def test_unknown_column(self):
        with pytest.raises(KeyError):
            make_table([("x", "")]).add_row({"z": 1})


class TestCsv:
    def test_header_only(self, tmp_path):
        path = emit_csv(make_table([("p_max_dbm", "dBm"), ("xi", "")]), tmp_path / "out" / "empty.csv")
        assert path.read_text() == "p_max_dbm [dBm],xi\n"

    def test_cells(self, tmp_path):
        table = make_table([("a", ""), ("b", ""), ("c", ""), ("d", ""), ("e", "")])
        table.add_row({"a": 1.0 / 3.0, "b": 7, "c": True, "d": "psr", "e": float("nan")})
        rows = read_csv(emit_csv(table, tmp_path / "cells.csv", digits=4))
        assert rows[1] == ["0.3333", "7", "1", "psr", "nan"]

    def test_identical_tables_give_identical_bytes(self, tmp_path):
        table = make_table([("x", "")])
        table.extend({"x": value} for value in (0.1, 1e-12, 12345.678))
        first = emit_csv(table, tmp_path / "a.csv").read_bytes()
        assert emit_csv(table, tmp_path / "b.csv").read_bytes() == first

    def test_unwritable_path(self, tmp_path):
        with pytest.raises(OutputError):
            emit_csv(make_table([("x", "")]), tmp_path)

    def test_trace_path(self, tmp_path):
        assert trace_path(tmp_path / "fig4.csv") == tmp_path / "fig4.trace.csv"
        assert trace_path("fig4") == trace_path("fig4.csv")


class TestDepAnalysis:
    def test_rows_and_determinism(self, bench_config):
        spec = dep_spec(bench_config)
        first = run_dep_analysis(spec)
        assert len(first) == 2
        assert first.rows == run_dep_analysis(spec).rows
        for row in first.records():
            assert row["abs_deviation"] == pytest.approx(abs(row["xi_closed"] - row["xi_mc"]))
            assert row["tau"] > bench_config.noise_power
            assert row["optimal_tau"] is True

    def test_frozen_threshold(self, bench_config):
        table = run_dep_analysis(dep_spec(bench_config, wcsi=WcsiMode.NONE))
        taus = table.column("tau")
        assert taus[0] == taus[1]
        assert table.column("optimal_tau") == [False, False]

    def test_given_threshold(self, bench_config):
        table = run_dep_analysis(dep_spec(bench_config, wcsi=WcsiMode.NONE, tau=1e-9))
        assert table.column("tau") == [1e-9, 1e-9]

    def test_optimal_threshold_dep_flat_in_power(self, near_backscatter):
        sweep = SweepSpec(parameter=SweepParameter.P_MAX_DBM, values=(0.0, 10.0, 20.0, 30.0))
        xi = run_dep_analysis(dep_spec(near_backscatter, sweep=sweep, trials=200)).column("xi_closed")
        assert max(xi) - min(xi) < 1e-3

    def test_dep_falls_with_reflection_coefficient(self, near_backscatter):
        alphas = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)
        sweep = SweepSpec(parameter=SweepParameter.ALPHA, values=alphas)
        table = run_dep_analysis(dep_spec(near_backscatter, sweep=sweep, trials=200))
        assert table.column("alpha") == list(alphas)
        xi = table.column("xi_closed")
        assert all(a > b for a, b in zip(xi, xi[1:]))
        assert xi[0] - xi[-1] > 1e-2


class TestOptimization:
    def test_infeasible_instances_become_rows(self):
        hopeless = SystemConfig(eps_sic=40.0)
        spec = ExperimentSpec(
            name="opt-test",
            kind=ExperimentKind.OPTIMIZE,
            scenario=hopeless,
            sweep=SweepSpec(parameter=SweepParameter.P_MAX_DBM, values=(20.0, 25.0)),
            mode=RunMode.PSR,
            instances=2,
            baseline_draws=5,
        )
        table = run_experiment(spec)
        assert len(table) == 4
        assert table.column("feasible") == [0, 0, 0, 0]
        assert all(math.isnan(xi) for xi in table.column("xi"))

    def test_baseline_without_feasible_draws(self, rng):
        hopeless = SystemConfig(eps_sic=40.0)
        channels = sample_channels(hopeless, rng)
        alpha, xi = random_phase_baseline(channels, hopeless, Mode.PSR, 5, rng.generator())
        assert math.isnan(alpha) and math.isnan(xi)

    @pytest.mark.slow
    def test_calibrated_sweep_with_traces(self):
        config = SystemConfig(path_loss_intercept_db=0.0)
        spec = ExperimentSpec(
            name="opt-bench",
            kind=ExperimentKind.OPTIMIZE,
            scenario=config,
            sweep=SweepSpec(parameter=SweepParameter.P_MAX_DBM, values=(30.0,)),
            mode=RunMode.BOTH,
            baseline_draws=20,
            traces=True,
        )
        traces = trace_columns(spec)
        table = run_experiment(spec, traces=traces)
        assert table.column("mode") == ["psr", "csr"]
        feasible = [row for row in table.records() if row["feasible"] == 1]
        assert feasible
        for row in feasible:
            assert 0.0 <= row["xi"] <= 1.0
            assert 0.0 < row["alpha"] <= 1.0
            assert row["converged"] == (row["stop_reason"] == "tolerance")
        assert len(traces) > 0
        assert set(traces.column("mode")) <= {"psr", "csr"}


def median_alphas(config: SystemConfig, parameter: SweepParameter, values, mode: RunMode = RunMode.BOTH):
    """Median optimized alpha per (mode, value) over 10 channel draws; infeasible draws count as inf."""
    spec = ExperimentSpec(
        name="trend",
        kind=ExperimentKind.OPTIMIZE,
        scenario=config,
        sweep=SweepSpec(parameter=parameter, values=values),
        mode=mode,
        instances=10,
        baseline_draws=1,
        seed=11,
    )
    alphas = defaultdict(list)
    for row in run_experiment(spec).records():
        alphas[row["mode"], row[parameter.value]].append(row["alpha"] if row["feasible"] == 1 else math.inf)
    return {key: float(np.median(group)) for key, group in alphas.items()}


@pytest.mark.slow
class TestOptimizedTrends:
    # alpha is what the optimizers minimize; the DEP is decreasing in it
    STRONG_LINK = SystemConfig(path_loss_intercept_db=0.0, p_max=1.0)

    def test_more_elements_need_less_reflection(self):
        medians = median_alphas(self.STRONG_LINK, SweepParameter.NUM_ELEMENTS, (4.0, 8.0, 12.0))
        for mode in ("psr", "csr"):
            assert medians[mode, 4.0] >= medians[mode, 8.0] >= medians[mode, 12.0]
            assert math.isfinite(medians[mode, 12.0])

    def test_longer_backscatter_symbols_cost_reflection(self):
        medians = median_alphas(self.STRONG_LINK, SweepParameter.ETA, (1.0, 5.0, 10.0), RunMode.CSR)
        assert medians["csr", 1.0] <= medians["csr", 5.0] <= medians["csr", 10.0]
        assert math.isfinite(medians["csr", 10.0])

    def test_backscatter_rate_costs_csr_more(self):
        medians = median_alphas(self.STRONG_LINK, SweepParameter.EPS_C, (0.1, 0.5))
        assert all(math.isfinite(value) for value in medians.values())
        psr_growth = medians["psr", 0.5] - medians["psr", 0.1]
        csr_growth = medians["csr", 0.5] - medians["csr", 0.1]
        assert csr_growth >= psr_growth > 0.0


class TestPresets:
    def test_names(self):
        assert sorted(PRESETS) == [f"fig{n}" for n in range(3, 10)]

    def test_lookup(self):
        assert get_preset("FIG3") is PRESETS["fig3"]
        with pytest.raises(KeyError):
            get_preset("fig10")

    def test_fig3_runs(self):
        runs = PRESETS["fig3"].runs
        assert [run.wcsi for run in runs] == [WcsiMode.STATISTICAL, WcsiMode.NONE]
        assert all(run.scenario.num_elements == 30 for run in runs)

    def test_with_options(self, tmp_path):
        base = SystemConfig(rician_factor=1.0)
        preset = get_preset("fig3").with_options(scenario=base, seed=5, trials=100, output_dir=tmp_path)
        for run in preset.runs:
            assert run.seed == 5
            assert run.trials == 100
            assert run.output.parent == tmp_path
            assert run.scenario.num_elements == 30
            assert run.scenario.rician_factor == 1.0

    def test_trace_preset(self):
        assert PRESETS["fig4"].runs[0].traces
