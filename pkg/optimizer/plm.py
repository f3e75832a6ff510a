"""Phase-shift optimization for the commensal (CSR) strategy.

Quantities are in SNR units: with s the primary SNR and g the backscatter
SNR per unit alpha, the smallest feasible alpha is kappa / g. Each iteration
replaces g by the scaled Lipschitz minorant of Gamma and, in the low SNR
regime, the concave SIC term of kappa by its tangent at the anchor, so

    kappa(t) <= A0 + A1 t,   t = Tr(Q_SR V).

The low-regime step minimizes the linearized kappa/kappa_l - ln(eps) over the
minorant level eps. For a fixed eps the best kappa comes from a linear SDP in
V, so the level is found by a bounded scalar search and the rank-one
relaxation is applied at the selected level. The high-regime step maximizes
the minorant with the regime condition reversed.
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy import optimize

from channel.models import ChannelRealization, LiftedMatrices, PhaseProfile
from channel.propagation import build_lifted, cascade_gains
from config.scenario import SicBoundForm, SystemConfig
from logs.logger import get_logger, log_infeasible, log_sca_iteration
from numerics.rng import RngStream
from optimizer.common import evaluate_covertness, initial_phase, lifted_scales, surrogate_constraint
from optimizer.models import IterationRecord, OptimResult, StopReason
from optimizer.surrogate import Surrogate, backtrack_lipschitz, build_surrogate, gamma
from rates.capacity import Mode
from sdp.models import LinearConstraint, Relation, RelaxationSchedule, SdpProblem, Sense
from sdp.solver import solve_sdp
from sdp.srocr import extract_phase, srocr
from strategy.allocation import alpha_region_csr, snr_regime
from strategy.models import Regime
from utils.constants import LOW_REGIME_MARGIN
from utils.exceptions import CovertRadioError, DomainError, InfeasibleInstanceError

logger = get_logger(__name__)

INFEASIBLE_LEVEL_PENALTY = 1e30


def taylor_chi_upper(
    trace_val: float,
    trace_anchor: float,
    p_hat: float,
    sigma2: float,
    gamma_sic: float,
) -> float:
    """Tangent upper bound of chi(x) = sqrt(sigma2^2 (1 + gamma) - 4 sigma2 p x) at the anchor.

    Args:
        trace_val: Point x at which the bound is evaluated (primary power gain)
        trace_anchor: Expansion point
        p_hat: Transmit power (W)
        sigma2: Noise power (W)
        gamma_sic: SIC SNR requirement entering the radicand

    Raises:
        DomainError: if the radicand at the anchor is not positive
    """
    radicand = sigma2 * sigma2 * (1.0 + gamma_sic) - 4.0 * sigma2 * p_hat * trace_anchor
    if not radicand > 0:
        raise DomainError("trace_anchor", trace_anchor, "sigma2^2 (1 + gamma) > 4 sigma2 p x")
    chi = math.sqrt(radicand)
    return chi - 4.0 * sigma2 * p_hat * (trace_val - trace_anchor) / (2.0 * chi)


def _sic_program_form(form: SicBoundForm, gamma_sic: float) -> Tuple[float, float]:
    """(radicand gamma, coefficient of s) of the SIC alpha numerator."""
    if form is SicBoundForm.PUBLISHED:
        return gamma_sic, 3.0
    return gamma_sic * (2.0 + gamma_sic), 1.0


@dataclass
class _RunState:
    v: np.ndarray
    alpha: float
    regime: Regime
    trace: List[float] = field(default_factory=list)
    records: List[IterationRecord] = field(default_factory=list)
    iterations: int = 0
    stop_reason: StopReason = StopReason.MAX_ITERATIONS


class _CsrInstance:
    """Lifted data and exact evaluators for one channel realization."""

    def __init__(self, channels: ChannelRealization, config: SystemConfig):
        self.channels = channels
        self.config = config
        self.lifted: LiftedMatrices = build_lifted(channels)
        self.k_sr, self.d_bb = lifted_scales(channels.losses)
        self.p_hat = config.p_max
        self.sigma2 = config.noise_power
        self.gamma_sic = config.gamma_sic
        self.b_qos = (2.0 ** (config.eta * config.eps_c) - 1.0) / config.eta
        self.rho = self.p_hat / (self.d_bb * self.sigma2)
        self.t_regime = (1.0 + self.gamma_sic) * self.sigma2 * self.k_sr / (4.0 * self.p_hat)

    def trace_sr(self, v: np.ndarray) -> float:
        return float(np.real(np.conj(v) @ self.lifted.g_sr @ v))

    def gamma(self, v: np.ndarray) -> float:
        return gamma(v, self.lifted.g_sb, self.lifted.g_br)

    def regime(self, v: np.ndarray) -> Regime:
        gains = cascade_gains(self.channels, PhaseProfile.from_vector(v))
        return snr_regime(self.p_hat, gains.h_sr, self.sigma2, self.gamma_sic)

    def exact_alpha(self, v: np.ndarray) -> float:
        """Smallest alpha meeting QoS and the two-branch SIC at v, in either regime."""
        gains = cascade_gains(self.channels, PhaseProfile.from_vector(v))
        return alpha_region_csr(
            self.p_hat, gains, self.sigma2, self.gamma_sic, self.config.eta,
            self.config.eps_c, self.config.sic_bound_form,
        ).lower

    def kappa_affine(self, anchor_trace: float) -> Tuple[float, float]:
        """(A0, A1) of the tangent bound on the SIC numerator in SNR units."""
        gamma_r, coef = _sic_program_form(self.config.sic_bound_form, self.gamma_sic)
        h_a = anchor_trace / self.k_sr

        def kappa(t: float) -> float:
            chi = taylor_chi_upper(t / self.k_sr, h_a, self.p_hat, self.sigma2, gamma_r)
            return (chi - self.sigma2 + coef * self.p_hat * t / self.k_sr) / self.sigma2

        chi_a = math.sqrt(self.sigma2 ** 2 * (1.0 + gamma_r) - 4.0 * self.sigma2 * self.p_hat * h_a)
        a1 = self.p_hat / self.k_sr * (coef / self.sigma2 - 2.0 / chi_a)
        return kappa(0.0), a1


def _level_problem(
    instance: _CsrInstance,
    surrogate: Surrogate,
    level: float,
    a0: float,
    a1: float,
) -> SdpProblem:
    q_sr = instance.lifted.q_sr
    t_cap = instance.t_regime * (1.0 - LOW_REGIME_MARGIN)
    constraints = [
        surrogate_constraint(surrogate, level / instance.rho, "epsilon"),
        LinearConstraint(q_sr, Relation.LE, t_cap, name="low-regime"),
    ]
    if a1 > 0:
        constraints.append(LinearConstraint(q_sr, Relation.LE, (level - a0) / a1, name="alpha<=1"))
        return SdpProblem(objective=q_sr, sense=Sense.MIN, constraints=tuple(constraints))
    if a1 < 0:
        constraints.append(LinearConstraint(q_sr, Relation.GE, (level - a0) / a1, name="alpha<=1"))
        return SdpProblem(objective=q_sr, sense=Sense.MAX, constraints=tuple(constraints))
    return SdpProblem(objective=surrogate.objective_matrix, sense=Sense.MAX, constraints=tuple(constraints))


def _low_regime_step(
    instance: _CsrInstance,
    surrogate: Surrogate,
    anchor: np.ndarray,
    schedule: RelaxationSchedule,
) -> Optional[Tuple[np.ndarray, float, float]]:
    """One low-regime update; returns (candidate, level, rank ratio) or None."""
    tol = instance.config.solver_tol
    a0, a1 = instance.kappa_affine(instance.trace_sr(anchor))
    kappa_anchor = max(instance.b_qos, a0 + a1 * instance.trace_sr(anchor), 1e-300)

    cap = SdpProblem(
        objective=surrogate.objective_matrix,
        sense=Sense.MAX,
        constraints=(LinearConstraint(instance.lifted.q_sr, Relation.LE,
                                      instance.t_regime * (1.0 - LOW_REGIME_MARGIN), name="low-regime"),),
    )
    top = solve_sdp(cap, tol)
    if not top.optimal:
        return None
    e_max = instance.rho * (top.objective + surrogate.const)
    e_min = max(instance.b_qos, 1e-12 * abs(e_max))
    if not e_min < e_max:
        return None

    def linearized(level: float) -> float:
        if a1 == 0.0 and a0 > level:
            return INFEASIBLE_LEVEL_PENALTY
        try:
            solution = solve_sdp(_level_problem(instance, surrogate, level, a0, a1), tol)
        except CovertRadioError:
            return INFEASIBLE_LEVEL_PENALTY
        if not solution.optimal:
            return INFEASIBLE_LEVEL_PENALTY
        t = float(np.real(np.trace(instance.lifted.q_sr @ solution.v)))
        kappa = max(instance.b_qos, a0 + a1 * t)
        return kappa / kappa_anchor - math.log(level)

    search = optimize.minimize_scalar(
        linearized, bounds=(e_min, e_max), method="bounded",
        options={"xatol": 1e-6 * max(abs(e_max), 1e-300)},
    )
    if search.fun >= INFEASIBLE_LEVEL_PENALTY:
        return None
    level = float(search.x)
    solution = srocr(_level_problem(instance, surrogate, level, a0, a1), schedule, tol)
    if not solution.optimal:
        return None
    return extract_phase(solution).v, level, solution.rank_ratio


def _high_regime_step(
    instance: _CsrInstance,
    surrogate: Surrogate,
    anchor_gamma: float,
    schedule: RelaxationSchedule,
) -> Optional[Tuple[np.ndarray, float, float]]:
    qos_level = instance.b_qos / instance.rho
    problem = SdpProblem(
        objective=surrogate.objective_matrix,
        sense=Sense.MAX,
        constraints=(LinearConstraint(instance.lifted.q_sr, Relation.GE, instance.t_regime, name="high-regime"),),
    )
    if anchor_gamma >= qos_level:
        problem = problem.with_constraint(surrogate_constraint(surrogate, qos_level, "qos"))
    solution = srocr(problem, schedule, instance.config.solver_tol)
    if not solution.optimal:
        return None
    return extract_phase(solution).v, instance.rho * (solution.objective + surrogate.const), solution.rank_ratio


def _run_regime(
    instance: _CsrInstance,
    regime: Regime,
    start: np.ndarray,
    generator: np.random.Generator,
) -> _RunState:
    config = instance.config
    lifted = instance.lifted
    schedule = RelaxationSchedule.from_config(config)
    state = _RunState(v=start, alpha=instance.exact_alpha(start), regime=regime)
    state.trace.append(state.alpha)
    lipschitz = config.lipschitz

    for iteration in range(1, config.max_iterations + 1):
        state.iterations = iteration
        objective = instance.gamma(state.v)
        lipschitz = backtrack_lipschitz(state.v, lifted.g_sb, lifted.g_br, lipschitz, generator)
        surrogate = build_surrogate(state.v, lifted.g_sb, lifted.g_br, lipschitz, generator)
        try:
            if regime is Regime.LOW:
                step = _low_regime_step(instance, surrogate, state.v, schedule)
            else:
                step = _high_regime_step(instance, surrogate, objective, schedule)
        except CovertRadioError as e:
            logger.warning(f"PLM ({regime.value}) iteration {iteration}: {e}; keeping current phases")
            state.stop_reason = StopReason.SOLVER_FAILURE
            break
        if step is None:
            logger.debug(f"PLM ({regime.value}) iteration {iteration}: no feasible level")
            state.stop_reason = StopReason.NO_FEASIBLE_STEP
            break
        candidate, level, rank = step

        slack = 1e-9 * max(1.0, objective)
        if surrogate.lemma_value(candidate) > instance.gamma(candidate) + slack:
            lipschitz *= 2.0
            state.records.append(IterationRecord(iteration, level, state.alpha, rank, lipschitz, False, regime))
            continue

        alpha = instance.exact_alpha(candidate)
        accepted = alpha <= state.alpha
        state.records.append(IterationRecord(iteration, level, alpha, rank, lipschitz, accepted, regime))
        log_sca_iteration(logger, "PLM", iteration, level, alpha, rank, regime.value, lipschitz)
        if not accepted:
            state.stop_reason = StopReason.NO_IMPROVEMENT
            break
        change = state.alpha - alpha
        state.v, state.alpha = candidate, alpha
        state.trace.append(alpha)
        if change <= config.tol * abs(alpha):
            state.stop_reason = StopReason.TOLERANCE
            break
    return state


def plm_solve(
    channels: ChannelRealization,
    config: SystemConfig,
    rng: Optional[RngStream] = None,
    tau: Optional[float] = None,
) -> OptimResult:
    """Optimize IRS phases for the CSR strategy at p = P_max.

    The regime is classified at the starting phase. If the optimized phase
    ends in the other regime, the program is solved once more in that regime
    from the optimized phase and the smaller alpha is kept.

    Args:
        channels: Channel realization
        config: Scenario
        rng: Stream for the random start and minorant checks
        tau: Fixed warden threshold; the optimal threshold when omitted

    Returns:
        OptimResult whose objective trace is the alpha lower bound

    Raises:
        InfeasibleInstanceError: if the final alpha bound exceeds 1
    """
    rng = rng or RngStream(seed=0)
    generator = rng.generator()
    instance = _CsrInstance(channels, config)

    start = initial_phase(config, channels, generator, lambda phase: True)
    regime = instance.regime(start.v)
    state = _run_regime(instance, regime, start.v, generator)

    flipped = False
    final_regime = instance.regime(state.v)
    if final_regime is not regime:
        logger.warning(f"PLM regime flipped {regime.value} -> {final_regime.value}; re-solving once")
        flipped = True
        alternative = _run_regime(instance, final_regime, state.v, generator)
        if alternative.alpha < state.alpha:
            alternative.trace = state.trace + alternative.trace[1:]
            alternative.records = state.records + alternative.records
            alternative.iterations += state.iterations
            state = alternative

    if not (math.isfinite(state.alpha) and 0.0 < state.alpha <= 1.0):
        log_infeasible(logger, "PLM", f"alpha lower bound {state.alpha:.4g}")
        raise InfeasibleInstanceError(f"CSR alpha lower bound {state.alpha:.4g} exceeds 1")

    phase = PhaseProfile.from_vector(state.v)
    threshold, dep = evaluate_covertness(config, channels.losses, state.alpha, config.p_max, tau)
    logger.info(
        f"PLM finished after {state.iterations} iterations ({instance.regime(state.v).value} regime): "
        f"alpha={state.alpha:.6g}, xi={dep.xi:.6f}"
    )
    return OptimResult(
        mode=Mode.CSR,
        phase=phase,
        alpha=state.alpha,
        p=config.p_max,
        tau=threshold,
        dep=dep,
        gamma=instance.gamma(state.v),
        iterations=state.iterations,
        stop_reason=state.stop_reason,
        objective_trace=state.trace,
        records=state.records,
        regime=instance.regime(state.v),
        regime_flipped=flipped,
    )
