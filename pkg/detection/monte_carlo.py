"""Monte Carlo estimates of the warden's detection error probability."""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import TYPE_CHECKING, List, Optional, Sequence, Tuple

import numpy as np

from channel.models import PhaseProfile
from channel.propagation import link_losses, sample_fading
from detection.models import DepMethod, DepReport
from logs.logger import get_logger
from numerics.rng import RngStream
from utils.constants import DEFAULT_CHUNK_SIZE
from utils.exceptions import DimensionError, DomainError

if TYPE_CHECKING:
    from config.scenario import SystemConfig

logger = get_logger(__name__)


def _chunk_sizes(trials: int, chunk_size: int) -> List[int]:
    full, rest = divmod(trials, chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


def _cascade(g_i: np.ndarray, g_j: np.ndarray, v: np.ndarray, l_i: float, l_j: float) -> np.ndarray:
    """Row-wise g_i^H diag(v) g_j / sqrt(l_i l_j) for (n, M) draws."""
    return np.sum(np.conj(g_i) * v * g_j, axis=1) / math.sqrt(l_i * l_j)


def _validate(trials: int, chunk_size: int, phase: Optional[PhaseProfile], num_elements: int) -> None:
    if trials < 1:
        raise DomainError("trials", trials, "trials >= 1")
    if chunk_size < 1:
        raise DomainError("chunk_size", chunk_size, "chunk_size >= 1")
    if phase is not None and phase.size != num_elements:
        raise DimensionError("phase profile", num_elements, phase.size)


def _std_error(p_fa: float, p_md: float, trials: int) -> float:
    return math.sqrt((p_fa * (1.0 - p_fa) + p_md * (1.0 - p_md)) / trials)


def avg_dep_monte_carlo(
    config: "SystemConfig",
    p: float,
    alpha: float,
    tau: float,
    trials: int,
    rng: RngStream,
    phase: Optional[PhaseProfile] = None,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    workers: int = 1,
    losses: Optional[Sequence[float]] = None,
) -> DepReport:
    """Count false alarms and misses of the average-power test.

    Every trial draws a fresh realization under each hypothesis: (g_S, g_W)
    under H0 and (g_S, g_B, g_W) under H1. Chunk k uses substream k of
    ``rng`` so the estimate does not depend on the number of workers.

    Args:
        config: Scenario (M, Rician factor, noise power, path loss)
        p: Transmit power (W)
        alpha: Reflection coefficient, alpha >= 0
        tau: Detection threshold (W)
        trials: Number of trials per hypothesis
        rng: Base random stream
        phase: IRS phases; all-zero phases when omitted
        chunk_size: Trials per chunk
        workers: Thread pool size
        losses: Linear losses (S, B, R, W); taken from the scenario geometry when omitted

    Returns:
        DepReport with method monte-carlo, trials and standard error
    """
    m = config.num_elements
    _validate(trials, chunk_size, phase, m)
    if alpha < 0:
        raise DomainError("alpha", alpha, "alpha >= 0")
    l_s, l_b, _, l_w = losses if losses is not None else link_losses(config)
    v = (phase or PhaseProfile.zeros(m)).v
    sigma2 = config.noise_power
    rician = config.rician_factor

    def run_chunk(job: Tuple[int, int]) -> Tuple[int, int]:
        index, n = job
        generator = rng.substream(index).generator()
        g_s0 = sample_fading(generator, rician, (n, m))
        g_w0 = sample_fading(generator, rician, (n, m))
        h0 = p * np.abs(_cascade(g_s0, g_w0, v, l_s, l_w)) ** 2 + sigma2

        g_s1 = sample_fading(generator, rician, (n, m))
        g_b1 = sample_fading(generator, rician, (n, m))
        g_w1 = sample_fading(generator, rician, (n, m))
        h_sb = _cascade(g_s1, g_b1, v, l_s, l_b)
        h_bw = _cascade(g_b1, g_w1, v, l_b, l_w)
        h_sw = _cascade(g_s1, g_w1, v, l_s, l_w)
        h1 = alpha * p * np.abs(h_sb) ** 2 * np.abs(h_bw) ** 2 + p * np.abs(h_sw) ** 2 + sigma2
        return int(np.count_nonzero(h0 > tau)), int(np.count_nonzero(h1 < tau))

    jobs = list(enumerate(_chunk_sizes(trials, chunk_size)))
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(run_chunk, jobs))
    else:
        counts = [run_chunk(job) for job in jobs]

    false_alarms = sum(c[0] for c in counts)
    misses = sum(c[1] for c in counts)
    p_fa = false_alarms / trials
    p_md = misses / trials
    logger.debug(f"MC DEP: {false_alarms} FA, {misses} MD over {trials} trials ({len(jobs)} chunks)")
    return DepReport(
        p_fa=p_fa,
        p_md=p_md,
        xi=p_fa + p_md,
        method=DepMethod.MONTE_CARLO,
        trials=trials,
        std_error=_std_error(p_fa, p_md, trials),
    )


def dep_probability_form_monte_carlo(
    config: "SystemConfig",
    p: float,
    alpha: float,
    tau: float,
    trials: int,
    rng: RngStream,
    phase: Optional[PhaseProfile] = None,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    losses: Optional[Sequence[float]] = None,
) -> DepReport:
    """Estimate xi = 1 - Pr(X < z < X + alpha Y) from shared draws.

    X = |h_SW|^2 and Y = |h_SB h_BW|^2 come from the same realization; the
    reported p_fa = Pr(X > z) and p_md = Pr(X + alpha Y < z) sum to the same xi.
    """
    m = config.num_elements
    _validate(trials, chunk_size, phase, m)
    l_s, l_b, _, l_w = losses if losses is not None else link_losses(config)
    v = (phase or PhaseProfile.zeros(m)).v
    z = (tau - config.noise_power) / p
    rician = config.rician_factor

    above = below = 0
    for index, n in enumerate(_chunk_sizes(trials, chunk_size)):
        generator = rng.substream(index).generator()
        g_s = sample_fading(generator, rician, (n, m))
        g_b = sample_fading(generator, rician, (n, m))
        g_w = sample_fading(generator, rician, (n, m))
        x = np.abs(_cascade(g_s, g_w, v, l_s, l_w)) ** 2
        y = np.abs(_cascade(g_s, g_b, v, l_s, l_b)) ** 2 * np.abs(_cascade(g_b, g_w, v, l_b, l_w)) ** 2
        above += int(np.count_nonzero(x > z))
        below += int(np.count_nonzero(x + alpha * y < z))

    p_fa = above / trials
    p_md = below / trials
    return DepReport(
        p_fa=p_fa,
        p_md=p_md,
        xi=p_fa + p_md,
        method=DepMethod.MONTE_CARLO,
        trials=trials,
        std_error=_std_error(p_fa, p_md, trials),
    )
