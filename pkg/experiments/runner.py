"""Parameter sweeps: DEP analysis and phase-shift optimization.

Sweep points run on a thread pool. Each point draws from its own random
streams, derived from (seed, stream id), and rows are assembled in sweep
order, so the output does not depend on the worker count.
"""

import math
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from channel.models import CascadeGains, ChannelRealization, PhaseProfile
from channel.propagation import cascade_gains, link_losses, sample_channels
from config.scenario import SystemConfig
from config.settings import Settings, get_settings
from detection.models import DepReport, DetectionParams, MissDetectionMode
from detection.monte_carlo import avg_dep_monte_carlo
from detection.threshold import optimal_threshold
from detection.warden import avg_dep_closed_form
from experiments.models import ExperimentKind, ExperimentSpec, ResultTable, WcsiMode, make_table
from logs.logger import get_logger, log_infeasible, log_sweep_point
from numerics.rng import RngStream
from optimizer.common import evaluate_covertness
from optimizer.models import OptimResult
from optimizer.pap import pap_solve
from optimizer.plm import plm_solve
from optimizer.surrogate import random_unit_modulus
from progress.statistics import StatisticsTracker
from progress.sweep_progress import SweepProgress
from rates.capacity import Mode
from strategy.allocation import (
    alpha_region_csr,
    alpha_region_psr,
    expected_omega,
    feasibility_predicate,
    min_feasible_power,
    optimal_power_fixed_tau,
)
from strategy.models import AlphaRegion
from utils.exceptions import InfeasibleInstanceError

logger = get_logger(__name__)

Row = Dict[str, object]

# Substreams of a channel-instance stream
_SOLVER_SUBSTREAM = 1
_BASELINE_SUBSTREAM = 2

SOLVERS: Dict[Mode, Callable[..., OptimResult]] = {Mode.PSR: pap_solve, Mode.CSR: plm_solve}


def dep_columns(spec: ExperimentSpec) -> ResultTable:
    parameter = spec.sweep.parameter
    return make_table([
        (parameter.value, parameter.unit),
        ("alpha", ""),
        ("p", "W"),
        ("tau", "W"),
        ("optimal_tau", ""),
        ("p_fa", ""),
        ("p_md", ""),
        ("xi_closed", ""),
        ("method", ""),
        ("xi_mc", ""),
        ("mc_std_error", ""),
        ("trials", ""),
        ("abs_deviation", ""),
    ])


def optimization_columns(spec: ExperimentSpec) -> ResultTable:
    parameter = spec.sweep.parameter
    return make_table([
        (parameter.value, parameter.unit),
        ("mode", ""),
        ("instance", ""),
        ("feasible", ""),
        ("xi", ""),
        ("p_fa", ""),
        ("p_md", ""),
        ("alpha", ""),
        ("p", "W"),
        ("tau", "W"),
        ("gamma", ""),
        ("iterations", ""),
        ("converged", ""),
        ("stop_reason", ""),
        ("regime", ""),
        ("baseline_alpha", ""),
        ("baseline_xi", ""),
    ])


def trace_columns(spec: ExperimentSpec) -> ResultTable:
    parameter = spec.sweep.parameter
    return make_table([
        (parameter.value, parameter.unit),
        ("mode", ""),
        ("instance", ""),
        ("iteration", ""),
        ("accepted", ""),
        ("objective", ""),
        ("surrogate", ""),
        ("rank_ratio", ""),
        ("lipschitz", ""),
        ("regime", ""),
    ])


def fixed_threshold(spec: ExperimentSpec, config: SystemConfig, losses: Sequence[float], alpha: float) -> float:
    """Threshold of a warden tuned once at the base scenario's P_max and then frozen."""
    if spec.tau is not None:
        return spec.tau
    params = DetectionParams.from_losses(
        config.noise_power, spec.scenario.p_max, alpha, config.num_elements, losses, config.noise_power
    )
    return optimal_threshold(spec.scenario.p_max, alpha, params.lam, params.l1, params.l2, params.sigma2)


def _run_points(
    spec: ExperimentSpec,
    settings: Settings,
    point: Callable[[int, float], List[Row]],
    table: ResultTable,
    show_progress: bool,
) -> ResultTable:
    values = spec.sweep.values
    parameter = spec.sweep.parameter.value
    tracker = StatisticsTracker(spec.name, parameter, len(values))
    tracker.start_session()

    def timed(job: Tuple[int, float]) -> Tuple[List[Row], float]:
        index, value = job
        start = time.perf_counter()
        rows = point(index, value)
        elapsed = time.perf_counter() - start
        log_sweep_point(logger, spec.name, parameter, value, elapsed)
        infeasible = sum(1 for row in rows if row.get("feasible") == 0)
        tracker.record_point(index, value, len(rows), infeasible, elapsed)
        return rows, elapsed

    jobs = list(enumerate(values))
    with SweepProgress(spec.name, len(jobs), enabled=show_progress) as progress:
        if settings.workers > 1 and len(jobs) > 1:
            with ThreadPoolExecutor(max_workers=settings.workers) as pool:
                for (index, value), (rows, _) in zip(jobs, pool.map(timed, jobs)):
                    table.extend(rows)
                    progress.advance(f"{parameter}={value:g}")
        else:
            for index, value in jobs:
                rows, _ = timed((index, value))
                table.extend(rows)
                progress.advance(f"{parameter}={value:g}")

    tracker.end_session()
    return table


def run_dep_analysis(
    spec: ExperimentSpec,
    settings: Optional[Settings] = None,
    show_progress: bool = False,
) -> ResultTable:
    """Closed-form against Monte Carlo DEP over a sweep.

    One row per sweep value. With statistical WCSI the warden uses its optimal
    threshold at every point; without it the threshold is frozen (see
    ``fixed_threshold``).

    Args:
        spec: Experiment; ``spec.alpha`` is used unless alpha is swept
        settings: Runtime settings (workers, Monte Carlo chunk size)
        show_progress: Display a progress bar

    Returns:
        ResultTable in sweep order
    """
    settings = settings or get_settings()
    mc_workers = settings.workers if len(spec.sweep.values) == 1 else 1

    def point(index: int, value: float) -> List[Row]:
        config = spec.scenario_at(value)
        alpha = spec.alpha_at(value)
        p = config.p_max
        losses = link_losses(config)
        params = DetectionParams.from_losses(
            config.noise_power, p, alpha, config.num_elements, losses, config.noise_power
        )
        if spec.wcsi is WcsiMode.STATISTICAL:
            tau = optimal_threshold(p, alpha, params.lam, params.l1, params.l2, params.sigma2)
        else:
            tau = fixed_threshold(spec, config, losses, alpha)
        closed = avg_dep_closed_form(params.with_threshold(tau), config.quadrature_order, MissDetectionMode.AUTO)
        mc = avg_dep_monte_carlo(
            config, p, alpha, tau, spec.trials, RngStream(spec.seed, stream_id=index),
            chunk_size=settings.mc_chunk_size, workers=mc_workers, losses=losses,
        )
        return [{
            spec.sweep.parameter.value: value,
            "alpha": alpha,
            "p": p,
            "tau": tau,
            "optimal_tau": spec.wcsi is WcsiMode.STATISTICAL,
            "p_fa": closed.p_fa,
            "p_md": closed.p_md,
            "xi_closed": closed.xi,
            "method": closed.method.value,
            "xi_mc": mc.xi,
            "mc_std_error": mc.std_error,
            "trials": spec.trials,
            "abs_deviation": abs(closed.xi - mc.xi),
        }]

    logger.info(f"{spec.name}: DEP analysis over {spec.sweep.parameter.value} ({len(spec.sweep.values)} points)")
    return _run_points(spec, settings, point, dep_columns(spec), show_progress)


def alpha_region(mode: Mode, gains: CascadeGains, config: SystemConfig, p: float) -> AlphaRegion:
    if mode is Mode.PSR:
        return alpha_region_psr(p, gains, config.noise_power, config.gamma_c, config.gamma_sic)
    return alpha_region_csr(
        p, gains, config.noise_power, config.gamma_sic, config.eta, config.eps_c, config.sic_bound_form
    )


def random_phase_baseline(
    channels: ChannelRealization,
    config: SystemConfig,
    mode: Mode,
    draws: int,
    generator: np.random.Generator,
    tau: Optional[float] = None,
) -> Tuple[float, float]:
    """Best of ``draws`` random IRS phases with a random feasible alpha.

    Each draw takes uniform phases and alpha uniform on its feasible interval;
    the smallest alpha wins because the DEP decreases in alpha.

    Returns:
        (alpha, xi), both NaN when no draw is feasible
    """
    p = config.p_max
    best = math.inf
    for _ in range(draws):
        phase = PhaseProfile.from_vector(random_unit_modulus(generator, channels.num_elements))
        region = alpha_region(mode, cascade_gains(channels, phase), config, p)
        if not region.feasible:
            continue
        best = min(best, generator.uniform(region.lower, region.effective_upper))
    if not math.isfinite(best):
        return float("nan"), float("nan")
    _, dep = evaluate_covertness(config, channels.losses, best, p, tau)
    return best, dep.xi


def _apply_fixed_threshold(
    spec: ExperimentSpec,
    config: SystemConfig,
    channels: ChannelRealization,
    mode: Mode,
    result: OptimResult,
) -> Tuple[float, float, float, DepReport]:
    """Power and alpha for a warden with a frozen threshold.

    The DEP at a fixed threshold has a single interior minimum in p, so the
    power sits at p_min_f or P_max, whichever gives the larger DEP.
    """
    losses = channels.losses
    tau = fixed_threshold(spec, config, losses, result.alpha)
    gains = cascade_gains(channels, result.phase)
    p_max = config.p_max
    p_min_f = min_feasible_power(feasibility_predicate(mode, gains, config), p_max)
    params = DetectionParams.from_losses(tau, p_max, result.alpha, config.num_elements, losses, config.noise_power)
    p = p_max
    if p_min_f < p_max:
        p = optimal_power_fixed_tau(
            tau, expected_omega(config, losses), result.alpha, params.lam, params.l1,
            config.noise_power, p_min_f, p_max,
        )
    region = alpha_region(mode, gains, config, p)
    alpha = region.lower if region.feasible else result.alpha
    if not region.feasible:
        p = p_max
    _, dep = evaluate_covertness(config, losses, alpha, p, tau)
    return alpha, p, tau, dep


def run_optimization(
    spec: ExperimentSpec,
    settings: Optional[Settings] = None,
    show_progress: bool = False,
    traces: Optional[ResultTable] = None,
) -> ResultTable:
    """Optimized DEP per sweep value, strategy and channel instance.

    Channel instance k is drawn from stream k at every sweep point, and PSR
    and CSR see the same draws. Infeasible instances become rows with
    ``feasible = 0``.

    Args:
        spec: Experiment
        settings: Runtime settings
        show_progress: Display a progress bar
        traces: Table (from ``trace_columns``) that receives per-iteration records

    Returns:
        ResultTable in sweep order
    """
    settings = settings or get_settings()
    parameter = spec.sweep.parameter.value

    def point(index: int, value: float) -> List[Row]:
        config = spec.scenario_at(value)
        rows: List[Row] = []
        trace_rows: List[Row] = []
        for instance in range(spec.instances):
            stream = RngStream(spec.seed, stream_id=instance)
            channels = sample_channels(config, stream)
            for mode in spec.mode.modes():
                row: Row = {parameter: value, "mode": mode.value, "instance": instance}
                solver_rng = stream.substream(_SOLVER_SUBSTREAM).substream(index)
                baseline_generator = stream.substream(_BASELINE_SUBSTREAM).substream(index).generator()
                try:
                    result = SOLVERS[mode](channels, config, rng=solver_rng)
                    alpha, p, tau, dep = result.alpha, result.p, result.tau, result.dep
                    baseline_tau = None
                    if spec.wcsi is WcsiMode.NONE:
                        alpha, p, tau, dep = _apply_fixed_threshold(spec, config, channels, mode, result)
                        baseline_tau = tau
                except InfeasibleInstanceError as e:
                    log_infeasible(logger, f"{spec.name} {parameter}={value:g} {mode.value}#{instance}", e.reason)
                    row["feasible"] = 0
                    rows.append(row)
                    continue

                baseline_alpha, baseline_xi = random_phase_baseline(
                    channels, config, mode, spec.baseline_draws, baseline_generator, baseline_tau
                )
                row.update({
                    "feasible": 1,
                    "xi": dep.xi,
                    "p_fa": dep.p_fa,
                    "p_md": dep.p_md,
                    "alpha": alpha,
                    "p": p,
                    "tau": tau,
                    "gamma": result.gamma,
                    "iterations": result.iterations,
                    "converged": result.converged,
                    "stop_reason": result.stop_reason.value,
                    "regime": result.regime.value if result.regime else "-",
                    "baseline_alpha": baseline_alpha,
                    "baseline_xi": baseline_xi,
                })
                rows.append(row)
                for record in result.records:
                    trace_rows.append({
                        parameter: value,
                        "mode": mode.value,
                        "instance": instance,
                        "iteration": record.iteration,
                        "accepted": record.accepted,
                        "objective": record.objective,
                        "surrogate": record.surrogate_value,
                        "rank_ratio": record.rank_ratio,
                        "lipschitz": record.lipschitz,
                        "regime": record.regime.value if record.regime else "-",
                    })
        point_traces[index] = trace_rows
        return rows

    point_traces: Dict[int, List[Row]] = {}
    logger.info(
        f"{spec.name}: optimization over {parameter} ({len(spec.sweep.values)} points, "
        f"modes {spec.mode.value}, {spec.instances} instances)"
    )
    table = _run_points(spec, settings, point, optimization_columns(spec), show_progress)
    if traces is not None:
        for index in sorted(point_traces):
            traces.extend(point_traces[index])
    return table


def run_experiment(
    spec: ExperimentSpec,
    settings: Optional[Settings] = None,
    show_progress: bool = False,
    traces: Optional[ResultTable] = None,
) -> ResultTable:
    """Dispatch on ``spec.kind``."""
    if spec.kind is ExperimentKind.DEP:
        return run_dep_analysis(spec, settings, show_progress)
    return run_optimization(spec, settings, show_progress, traces)
