"""Experiment specs, sweep runners, figure presets and CSV output."""

from .csv_writer import emit_csv, read_csv, trace_path
from .models import (
    Column,
    ExperimentKind,
    ExperimentSpec,
    ResultTable,
    RunMode,
    SweepParameter,
    SweepSpec,
    WcsiMode,
    make_table,
)
from .presets import PRESETS, Preset, get_preset
from .runner import (
    random_phase_baseline,
    run_dep_analysis,
    run_experiment,
    run_optimization,
    trace_columns,
)

__all__ = [
    "Column",
    "ExperimentKind",
    "ExperimentSpec",
    "PRESETS",
    "Preset",
    "ResultTable",
    "RunMode",
    "SweepParameter",
    "SweepSpec",
    "WcsiMode",
    "emit_csv",
    "get_preset",
    "make_table",
    "random_phase_baseline",
    "read_csv",
    "run_dep_analysis",
    "run_experiment",
    "run_optimization",
    "trace_columns",
    "trace_path",
]
