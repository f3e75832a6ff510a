"""Main entry point for the covert symbiotic-radio simulator."""

import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional

import click
from pydantic import ValidationError

from channel.propagation import link_losses
from config.scenario import SystemConfig, load_scenario
from config.settings import Settings, get_settings
from detection.models import DetectionParams, MissDetectionMode
from detection.threshold import optimal_threshold
from detection.warden import avg_dep_closed_form
from experiments.csv_writer import emit_csv, trace_path
from experiments.models import (
    ExperimentKind,
    ExperimentSpec,
    ResultTable,
    RunMode,
    SweepParameter,
    SweepSpec,
    WcsiMode,
)
from experiments.presets import PRESETS, get_preset
from experiments.runner import run_experiment, trace_columns
from logs.logger import get_logger, setup_logging
from utils.exceptions import CovertRadioError
from utils.helpers import dbm_to_watts

logger = get_logger(__name__)

SWEEP_CHOICES = [parameter.value for parameter in SweepParameter]


@contextmanager
def handle_errors(action: str) -> Iterator[None]:
    """Log failures and exit with status 1."""
    try:
        yield
    except KeyboardInterrupt:
        logger.info(f"{action} interrupted by user")
        sys.exit(1)
    except CovertRadioError as e:
        logger.error(f"{action} failed: {e}")
        sys.exit(1)
    except ValidationError as e:
        logger.error(f"{action}: invalid parameters: {e}")
        sys.exit(1)
    except Exception as e:
        logger.error(f"Unexpected error: {e}")
        sys.exit(1)


def _scenario(config_path: Optional[Path]) -> SystemConfig:
    return load_scenario(config_path) if config_path else SystemConfig()


def _output_path(settings: Settings, out: Optional[Path], name: str) -> Path:
    return out if out else settings.output_dir / f"{name}.csv"


def _write(settings: Settings, spec: ExperimentSpec, show_progress: bool) -> ResultTable:
    traces = trace_columns(spec) if spec.traces else None
    table = run_experiment(spec, settings, show_progress, traces)
    digits = settings.csv_significant_digits
    path = emit_csv(table, spec.output, digits)
    click.echo(f"{spec.name}: {len(table)} rows -> {path}")
    if traces is not None:
        emit_csv(traces, trace_path(spec.output), digits)
    return table


def common_options(func):
    """Options shared by the sweep commands."""
    options = [
        click.option('--config', '-c', 'config_path', type=click.Path(exists=True, dir_okay=False, path_type=Path),
                     help='Scenario file (key=value)'),
        click.option('--seed', type=click.IntRange(0, 2**64 - 1), help='64-bit seed (overrides config)'),
        click.option('--trials', type=click.IntRange(min=1), help='Monte Carlo trials per point (overrides config)'),
        click.option('--out', '-o', type=click.Path(dir_okay=False, path_type=Path), help='Output CSV path'),
        click.option('--progress/--no-progress', default=True, help='Show a progress bar (default: enabled)'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


@click.group()
@click.option(
    '--log-level',
    type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR'], case_sensitive=False),
    help='Logging level (overrides config)'
)
@click.option('--log-file', type=click.Path(dir_okay=False), help='Also log to this file')
@click.option('--workers', '-w', type=click.IntRange(1, 64), help='Parallel sweep points (overrides config)')
@click.pass_context
def main(ctx: click.Context, log_level: Optional[str], log_file: Optional[str], workers: Optional[int]):
    """Covert communication in IRS-assisted symbiotic radio.

    Runs detection-error analyses and IRS phase-shift optimizations over
    parameter sweeps and writes the results as CSV.
    """
    settings = get_settings()
    if log_level:
        settings.log_level = log_level.upper()
    if log_file:
        settings.log_file = log_file
    if workers:
        settings.workers = workers
    setup_logging(settings)
    ctx.obj = settings


@main.command()
@common_options
@click.option('--sweep', 'parameter', type=click.Choice(SWEEP_CHOICES), default=SweepParameter.P_MAX_DBM.value,
              show_default=True, help='Swept parameter')
@click.option('--values', default='0,5,10,15,20,25,30', show_default=True, help='Comma-separated sweep values')
@click.option('--alpha', type=click.FloatRange(0, 1, min_open=True), default=0.2, show_default=True,
              help='Reflection coefficient when alpha is not swept')
@click.option('--wcsi', type=click.Choice([m.value for m in WcsiMode]), default=WcsiMode.STATISTICAL.value,
              show_default=True, help='Warden CSI: stat (optimal threshold) or none (frozen threshold)')
@click.option('--tau', type=float, help='Frozen warden threshold in W for --wcsi none')
@click.pass_obj
def dep(settings: Settings, config_path, seed, trials, out, progress, parameter, values, alpha, wcsi, tau):
    """Closed-form vs Monte Carlo detection error probability."""
    with handle_errors("DEP analysis"):
        spec = ExperimentSpec(
            name="dep",
            kind=ExperimentKind.DEP,
            scenario=_scenario(config_path),
            sweep=SweepSpec(parameter=parameter, values=values),
            wcsi=wcsi,
            trials=trials or settings.default_trials,
            seed=settings.default_seed if seed is None else seed,
            output=_output_path(settings, out, "dep"),
            alpha=alpha,
            tau=tau,
        )
        _write(settings, spec, progress)


@main.command()
@common_options
@click.option('--sweep', 'parameter', type=click.Choice(SWEEP_CHOICES), default=SweepParameter.P_MAX_DBM.value,
              show_default=True, help='Swept parameter')
@click.option('--values', default='25', show_default=True, help='Comma-separated sweep values')
@click.option('--mode', type=click.Choice([m.value for m in RunMode]), default=RunMode.BOTH.value,
              show_default=True, help='Symbiotic-radio strategy')
@click.option('--wcsi', type=click.Choice([m.value for m in WcsiMode]), default=WcsiMode.STATISTICAL.value,
              show_default=True, help='Warden CSI: stat (optimal threshold) or none (frozen threshold)')
@click.option('--tau', type=float, help='Frozen warden threshold in W for --wcsi none')
@click.option('--instances', type=click.IntRange(min=1), default=1, show_default=True,
              help='Channel realizations per sweep point')
@click.option('--baseline-draws', type=click.IntRange(min=1), help='Random-phase benchmark draws (overrides config)')
@click.option('--traces', is_flag=True, help='Also write per-iteration traces to <out>.trace.csv')
@click.pass_obj
def optimize(settings: Settings, config_path, seed, trials, out, progress, parameter, values, mode, wcsi, tau,
             instances, baseline_draws, traces):
    """Optimize IRS phases (PSR and/or CSR) over a sweep."""
    with handle_errors("Optimization"):
        spec = ExperimentSpec(
            name="optimize",
            kind=ExperimentKind.OPTIMIZE,
            scenario=_scenario(config_path),
            sweep=SweepSpec(parameter=parameter, values=values),
            mode=mode,
            wcsi=wcsi,
            trials=trials or settings.default_trials,
            seed=settings.default_seed if seed is None else seed,
            output=_output_path(settings, out, "optimize"),
            tau=tau,
            instances=instances,
            baseline_draws=baseline_draws or settings.baseline_draws,
            traces=traces,
        )
        _write(settings, spec, progress)


@main.command()
@click.option('--config', '-c', 'config_path', type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help='Scenario file (key=value)')
@click.option('--p-max-dbm', type=float, help='Transmit power in dBm (overrides config)')
@click.option('--alpha', type=click.FloatRange(0, 1, min_open=True), default=0.2, show_default=True,
              help='Reflection coefficient')
@click.option('--num-elements', '-m', type=click.IntRange(min=1), help='IRS elements (overrides config)')
@click.pass_obj
def threshold(settings: Settings, config_path, p_max_dbm, alpha, num_elements):
    """Optimal warden threshold and the resulting detection error probability."""
    with handle_errors("Threshold"):
        config = _scenario(config_path)
        updates = {}
        if p_max_dbm is not None:
            updates["p_max"] = dbm_to_watts(p_max_dbm)
        if num_elements is not None:
            updates["num_elements"] = num_elements
        if updates:
            config = config.with_overrides(**updates)

        params = DetectionParams.from_losses(
            config.noise_power, config.p_max, alpha, config.num_elements, link_losses(config), config.noise_power
        )
        tau = optimal_threshold(config.p_max, alpha, params.lam, params.l1, params.l2, params.sigma2)
        report = avg_dep_closed_form(params.with_threshold(tau), config.quadrature_order, MissDetectionMode.AUTO)
        click.echo(f"tau*   = {tau:.9g} W")
        click.echo(f"P_FA   = {report.p_fa:.9g}")
        click.echo(f"P_MD   = {report.p_md:.9g}")
        click.echo(f"xi     = {report.xi:.9g} ({report.method.value})")


@main.command()
@click.argument('name', type=click.Choice(sorted(PRESETS), case_sensitive=False))
@click.option('--config', '-c', 'config_path', type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help='Scenario file applied under the preset parameters')
@click.option('--seed', type=click.IntRange(0, 2**64 - 1), help='64-bit seed (overrides config)')
@click.option('--trials', type=click.IntRange(min=1), help='Monte Carlo trials per point (overrides config)')
@click.option('--out', '-o', type=click.Path(file_okay=False, path_type=Path), help='Output directory')
@click.option('--progress/--no-progress', default=True, help='Show a progress bar (default: enabled)')
@click.pass_obj
def preset(settings: Settings, name, config_path, seed, trials, out, progress):
    """Run a figure preset (fig3..fig9)."""
    with handle_errors(f"Preset {name}"):
        chosen = get_preset(name).with_options(
            scenario=load_scenario(config_path) if config_path else None,
            seed=settings.default_seed if seed is None else seed,
            trials=trials or settings.default_trials,
            output_dir=out or settings.output_dir,
        )
        logger.info(f"Preset {chosen.name}: {chosen.description}")
        for spec in chosen.runs:
            _write(settings, spec, progress)


if __name__ == '__main__':
    main()
