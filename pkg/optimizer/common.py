"""Pieces shared by the PSR and CSR optimizers."""

from typing import TYPE_CHECKING, Callable, Optional, Sequence, Tuple

import numpy as np

from channel.models import ChannelRealization, PhaseProfile
from channel.propagation import align_phase
from config.scenario import InitStrategy
from detection.models import DepReport, DetectionParams, MissDetectionMode
from detection.threshold import optimal_threshold
from detection.warden import avg_dep_closed_form
from logs.logger import get_logger
from optimizer.surrogate import Surrogate, random_unit_modulus
from sdp.models import LinearConstraint, Relation

if TYPE_CHECKING:
    from config.scenario import SystemConfig

logger = get_logger(__name__)


def lifted_scales(losses: Sequence[float]) -> Tuple[float, float]:
    """(K, D) with |h_SR|^2 = v^H G_SR v / K and |h_SB h_BR|^2 = Gamma / D."""
    l_s, l_b, l_r, _ = losses
    return l_s * l_r, l_s * l_b * l_b * l_r


def surrogate_constraint(surrogate: Surrogate, level: float, name: str) -> LinearConstraint:
    """(L/2) Tr(U V) + const >= level."""
    return LinearConstraint(surrogate.objective_matrix, Relation.GE, level - surrogate.const, name=name)


def initial_phase(
    config: "SystemConfig",
    channels: ChannelRealization,
    generator: np.random.Generator,
    acceptable: Callable[[PhaseProfile], bool],
) -> Optional[PhaseProfile]:
    """Starting phases: random (or S-R aligned) with alignment as fall-back.

    Returns None if neither candidate is acceptable.
    """
    aligned = align_phase(channels.g_s, channels.g_r)
    candidates = [aligned]
    if config.init_strategy is InitStrategy.RANDOM:
        candidates.insert(0, PhaseProfile.from_vector(random_unit_modulus(generator, channels.num_elements)))
    for candidate in candidates:
        if acceptable(candidate):
            return candidate
        logger.debug("Initial phase rejected; trying S-R alignment")
    return None


def evaluate_covertness(
    config: "SystemConfig",
    losses: Sequence[float],
    alpha: float,
    p: float,
    tau: Optional[float] = None,
) -> Tuple[float, DepReport]:
    """Warden threshold and closed-form DEP for a chosen (alpha, p).

    Without a fixed ``tau`` the warden uses its optimal threshold.
    """
    params = DetectionParams.from_losses(
        config.noise_power, p, alpha, config.num_elements, losses, config.noise_power
    )
    if tau is None:
        tau = optimal_threshold(p, alpha, params.lam, params.l1, params.l2, params.sigma2)
    report = avg_dep_closed_form(params.with_threshold(tau), config.quadrature_order, MissDetectionMode.AUTO)
    return tau, report
