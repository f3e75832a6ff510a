"""Phase-shift optimization for the parasitic (PSR) strategy.

Each iteration maximizes the Lipschitz minorant of Gamma(v) subject to the
SIC constraint at the smallest QoS-feasible alpha and, once the anchor meets
it, the alpha <= 1 constraint in minorant form. The true objective is Gamma,
which is maximized because the PSR alpha lower bound is inversely
proportional to it.
"""

from typing import Optional

import numpy as np

from channel.models import ChannelRealization, PhaseProfile
from channel.propagation import build_lifted, cascade_gains
from config.scenario import SystemConfig
from logs.logger import get_logger, log_infeasible, log_sca_iteration
from numerics.rng import RngStream
from optimizer.common import evaluate_covertness, initial_phase, lifted_scales, surrogate_constraint
from optimizer.models import IterationRecord, OptimResult, StopReason
from optimizer.surrogate import backtrack_lipschitz, build_surrogate, gamma
from rates.capacity import Mode
from sdp.models import LinearConstraint, Relation, RelaxationSchedule, SdpProblem, Sense
from sdp.srocr import extract_phase, srocr
from strategy.allocation import alpha_region_psr
from utils.exceptions import CovertRadioError, InfeasibleInstanceError

logger = get_logger(__name__)


def _quadratic(v: np.ndarray, g: np.ndarray) -> float:
    return float(np.real(np.conj(v) @ g @ v))


def pap_solve(
    channels: ChannelRealization,
    config: SystemConfig,
    rng: Optional[RngStream] = None,
    tau: Optional[float] = None,
) -> OptimResult:
    """Optimize IRS phases for the PSR strategy at p = P_max.

    Args:
        channels: Channel realization
        config: Scenario
        rng: Stream for the random start and minorant checks
        tau: Fixed warden threshold; the optimal threshold when omitted

    Returns:
        OptimResult with alpha at the PSR lower bound and its DEP

    Raises:
        InfeasibleInstanceError: if no starting phase meets SIC or the final
            alpha region is empty
    """
    rng = rng or RngStream(seed=0)
    generator = rng.generator()
    lifted = build_lifted(channels)
    k_sr, d_bb = lifted_scales(channels.losses)
    p_hat, sigma2 = config.p_max, config.noise_power
    gamma_c, gamma_sic = config.gamma_c, config.gamma_sic

    sic_level = sigma2 * (1.0 + gamma_c) * gamma_sic * k_sr / p_hat
    qos_level = sigma2 * gamma_c * d_bb / p_hat

    def sic_met(v: np.ndarray) -> bool:
        return _quadratic(v, lifted.g_sr) >= sic_level * (1.0 - 1e-9)

    start = initial_phase(config, channels, generator, lambda phase: sic_met(phase.v))
    if start is None:
        log_infeasible(logger, "PAP", "SIC unmet at random and aligned starts")
        raise InfeasibleInstanceError("SIC constraint unmet at every starting phase")

    schedule = RelaxationSchedule.from_config(config)
    sic_constraint = LinearConstraint(lifted.q_sr, Relation.GE, sic_level, name="sic")
    v0 = start.v
    objective = gamma(v0, lifted.g_sb, lifted.g_br)
    lipschitz = config.lipschitz
    trace = [objective]
    records = []
    stop_reason = StopReason.MAX_ITERATIONS
    iteration = 0

    for iteration in range(1, config.max_iterations + 1):
        lipschitz = backtrack_lipschitz(v0, lifted.g_sb, lifted.g_br, lipschitz, generator)
        surrogate = build_surrogate(v0, lifted.g_sb, lifted.g_br, lipschitz, generator)
        problem = SdpProblem(
            objective=surrogate.objective_matrix, sense=Sense.MAX, constraints=(sic_constraint,)
        )
        if objective >= qos_level:
            problem = problem.with_constraint(surrogate_constraint(surrogate, qos_level, "qos"))
        try:
            solution = srocr(problem, schedule, config.solver_tol)
            candidate = extract_phase(solution).v
        except CovertRadioError as e:
            logger.warning(f"PAP iteration {iteration}: {e}; keeping current phases")
            stop_reason = StopReason.SOLVER_FAILURE
            break
        if not solution.optimal:
            logger.warning(f"PAP iteration {iteration}: SDP status {solution.status.value}")
            stop_reason = StopReason.SOLVER_FAILURE
            break

        slack = 1e-9 * max(1.0, objective)
        if surrogate.lemma_value(candidate) > gamma(candidate, lifted.g_sb, lifted.g_br) + slack:
            # minorant violated at the new point
            lipschitz *= 2.0
            records.append(IterationRecord(iteration, surrogate.value(candidate), objective,
                                           solution.rank_ratio, lipschitz, accepted=False))
            continue

        new_objective = gamma(candidate, lifted.g_sb, lifted.g_br)
        accepted = new_objective >= objective and sic_met(candidate)
        records.append(IterationRecord(iteration, surrogate.value(candidate), new_objective,
                                       solution.rank_ratio, lipschitz, accepted))
        log_sca_iteration(logger, "PAP", iteration, surrogate.value(candidate), new_objective,
                          solution.rank_ratio, lipschitz=lipschitz)
        if not accepted:
            stop_reason = StopReason.NO_IMPROVEMENT
            break
        change = new_objective - objective
        v0, objective = candidate, new_objective
        trace.append(objective)
        if abs(change) <= config.tol * max(1.0, abs(objective)):
            stop_reason = StopReason.TOLERANCE
            break

    phase = PhaseProfile.from_vector(v0)
    gains = cascade_gains(channels, phase)
    region = alpha_region_psr(p_hat, gains, sigma2, gamma_c, gamma_sic)
    if not region.feasible:
        log_infeasible(logger, "PAP", f"alpha region [{region.lower:.4g}, {region.upper:.4g}]")
        raise InfeasibleInstanceError(f"empty PSR alpha region [{region.lower:.4g}, {region.upper:.4g}]")

    threshold, dep = evaluate_covertness(config, channels.losses, region.lower, p_hat, tau)
    logger.info(
        f"PAP finished after {iteration} iterations: Gamma={objective:.6g}, "
        f"alpha={region.lower:.6g}, xi={dep.xi:.6f}"
    )
    return OptimResult(
        mode=Mode.PSR,
        phase=phase,
        alpha=region.lower,
        p=p_hat,
        tau=threshold,
        dep=dep,
        gamma=objective,
        iterations=iteration,
        stop_reason=stop_reason,
        objective_trace=trace,
        records=records,
    )
