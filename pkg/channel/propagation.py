"""Path loss, Rician channel sampling, IRS cascades and lifted quadratic forms."""

import math
from typing import TYPE_CHECKING, Tuple

import numpy as np

from channel.models import CascadeGains, ChannelRealization, LiftedMatrices, PathLossModel, PhaseProfile
from numerics.rng import RngStream
from utils.constants import TWO_PI
from utils.exceptions import DimensionError, DomainError
from utils.helpers import db_to_linear

if TYPE_CHECKING:
    from config.scenario import SystemConfig


def path_loss_linear(distance: float, model: PathLossModel) -> float:
    """Linear path loss 10^(L_dB/10) at a distance in meters.

    Raises:
        DomainError: if distance <= 0
    """
    if not distance > 0:
        raise DomainError("distance", distance, "d > 0")
    return db_to_linear(model.loss_db(distance))


def link_losses(config: "SystemConfig") -> Tuple[float, float, float, float]:
    """Linear path losses of the IRS links (S, B, R, W) for a scenario."""
    model = config.path_loss_model
    return tuple(path_loss_linear(d, model) for d in config.distances)


def sample_fading(generator: np.random.Generator, rician_factor: float, shape) -> np.ndarray:
    """Unit-power Rician entries: LoS term with uniform phase plus CN(0,1) scatter.

    Args:
        generator: numpy Generator
        rician_factor: K-factor B >= 0; B = inf gives pure LoS
        shape: Output shape

    Returns:
        Complex array with E|entry|^2 = 1
    """
    if math.isinf(rician_factor):
        los_weight, nlos_weight = 1.0, 0.0
    else:
        los_weight = math.sqrt(rician_factor / (1.0 + rician_factor))
        nlos_weight = math.sqrt(1.0 / (1.0 + rician_factor))
    phi = generator.uniform(0.0, TWO_PI, size=shape)
    scatter = (generator.standard_normal(shape) + 1j * generator.standard_normal(shape)) / math.sqrt(2.0)
    return los_weight * np.exp(1j * phi) + nlos_weight * scatter


def sample_channels(config: "SystemConfig", rng: RngStream) -> ChannelRealization:
    """Draw one block-fading realization of the four IRS channels."""
    generator = rng.generator()
    m = config.num_elements
    g_s, g_b, g_r, g_w = (sample_fading(generator, config.rician_factor, m) for _ in range(4))
    return ChannelRealization(
        g_s=g_s, g_b=g_b, g_r=g_r, g_w=g_w,
        distances=config.distances,
        losses=link_losses(config),
    )


def cascade_gain(
    g_i: np.ndarray,
    g_j: np.ndarray,
    phase: PhaseProfile,
    l_i: float,
    l_j: float,
) -> complex:
    """g_i^H Theta g_j / sqrt(l_i * l_j) for the i-IRS-j link."""
    g_i = np.asarray(g_i, dtype=complex).reshape(-1)
    g_j = np.asarray(g_j, dtype=complex).reshape(-1)
    if g_i.size != g_j.size or g_i.size != phase.size:
        raise DimensionError("cascade vectors", phase.size, (g_i.size, g_j.size))
    if not (l_i > 0 and l_j > 0):
        raise DomainError("path loss", (l_i, l_j), "l > 0")
    return complex(np.sum(np.conj(g_i) * phase.v * g_j) / math.sqrt(l_i * l_j))


def cascade_gains(channels: ChannelRealization, phase: PhaseProfile) -> CascadeGains:
    """All cascade gains used by the rate and detection formulas."""
    l_s, l_b, l_r, l_w = channels.losses
    return CascadeGains(
        h_sr=cascade_gain(channels.g_s, channels.g_r, phase, l_s, l_r),
        h_sb=cascade_gain(channels.g_s, channels.g_b, phase, l_s, l_b),
        h_br=cascade_gain(channels.g_b, channels.g_r, phase, l_b, l_r),
        h_sw=cascade_gain(channels.g_s, channels.g_w, phase, l_s, l_w),
        h_bw=cascade_gain(channels.g_b, channels.g_w, phase, l_b, l_w),
    )


def quadratic_form_matrix(g_i: np.ndarray, g_j: np.ndarray) -> np.ndarray:
    """Rank-one G with v^H G v = |g_i^H diag(v) g_j|^2 (unscaled by path loss)."""
    b = np.asarray(g_i, dtype=complex) * np.conj(np.asarray(g_j, dtype=complex))
    return np.outer(b, np.conj(b))


def pad_lifted(g: np.ndarray) -> np.ndarray:
    """Embed an MxM matrix in the (M+1)x(M+1) lifted space with zero last row/column."""
    m = g.shape[0]
    q = np.zeros((m + 1, m + 1), dtype=complex)
    q[:m, :m] = g
    return q


def build_lifted(channels: ChannelRealization) -> LiftedMatrices:
    """Quadratic-form matrices of the S-B, B-R and S-R cascades."""
    g_sb = quadratic_form_matrix(channels.g_s, channels.g_b)
    g_br = quadratic_form_matrix(channels.g_b, channels.g_r)
    g_sr = quadratic_form_matrix(channels.g_s, channels.g_r)
    return LiftedMatrices(
        g_sb=g_sb, g_br=g_br, g_sr=g_sr,
        q_sb=pad_lifted(g_sb), q_br=pad_lifted(g_br), q_sr=pad_lifted(g_sr),
    )


def lift(v: np.ndarray) -> np.ndarray:
    """V = [v;1][v;1]^H."""
    x = np.append(np.asarray(v, dtype=complex), 1.0 + 0j)
    return np.outer(x, np.conj(x))


def align_phase(g_i: np.ndarray, g_j: np.ndarray) -> PhaseProfile:
    """Phases that co-phase every term of g_i^H Theta g_j."""
    return PhaseProfile(theta=np.angle(g_i) - np.angle(g_j))
