"""Data models for geometry, channels and IRS phase profiles."""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from utils.constants import (
    DEFAULT_RX_GAIN_DBI,
    DEFAULT_TX_GAIN_DBI,
    PATH_LOSS_INTERCEPT_DB,
    PATH_LOSS_SLOPE_DB,
    TWO_PI,
)


class PathLossModel(BaseModel):
    """Log-distance path loss: intercept + slope*log10(d) - G_t - G_r (dB)."""

    model_config = ConfigDict(frozen=True)

    intercept_db: float = Field(PATH_LOSS_INTERCEPT_DB, description="Loss at 1 m before antenna gains (dB)")
    slope_db: float = Field(PATH_LOSS_SLOPE_DB, gt=0, description="dB per decade of distance")
    tx_gain_dbi: float = Field(DEFAULT_TX_GAIN_DBI, description="Transmit antenna gain (dBi)")
    rx_gain_dbi: float = Field(DEFAULT_RX_GAIN_DBI, description="Receive antenna gain (dBi)")

    def loss_db(self, distance: float) -> float:
        """Path loss in dB at a distance in meters."""
        return self.intercept_db + self.slope_db * math.log10(distance) - self.tx_gain_dbi - self.rx_gain_dbi


@dataclass(frozen=True)
class PhaseProfile:
    """IRS phase shifts and their unit-modulus vector form."""

    theta: np.ndarray

    def __post_init__(self):
        theta = np.mod(np.asarray(self.theta, dtype=float).reshape(-1), TWO_PI)
        object.__setattr__(self, "theta", theta)

    @property
    def v(self) -> np.ndarray:
        """Unit-modulus reflection vector e^{j theta}."""
        return np.exp(1j * self.theta)

    @property
    def size(self) -> int:
        return self.theta.size

    @classmethod
    def from_vector(cls, v: np.ndarray) -> "PhaseProfile":
        """Build a profile from the phases of a complex vector."""
        return cls(theta=np.angle(np.asarray(v, dtype=complex)))

    @classmethod
    def zeros(cls, num_elements: int) -> "PhaseProfile":
        return cls(theta=np.zeros(num_elements))


@dataclass(frozen=True)
class ChannelRealization:
    """Small-scale channel vectors to/from the IRS with link distances.

    The ``losses`` tuple holds the linear path loss of each IRS link in the
    order (S, B, R, W); it is filled in by the sampler from the path-loss model.
    """

    g_s: np.ndarray
    g_b: np.ndarray
    g_r: np.ndarray
    g_w: np.ndarray
    distances: Tuple[float, float, float, float]
    losses: Tuple[float, float, float, float]

    @property
    def num_elements(self) -> int:
        return self.g_s.size

    @property
    def loss_s(self) -> float:
        return self.losses[0]

    @property
    def loss_b(self) -> float:
        return self.losses[1]

    @property
    def loss_r(self) -> float:
        return self.losses[2]

    @property
    def loss_w(self) -> float:
        return self.losses[3]


@dataclass(frozen=True)
class CascadeGains:
    """Path-loss-scaled cascade channels through the IRS for one phase profile."""

    h_sr: complex
    h_sb: complex
    h_br: complex
    h_sw: complex
    h_bw: complex

    @property
    def backscatter_gain(self) -> float:
        """|h_SB|^2 |h_BR|^2, the double-reflection power gain towards R."""
        return abs(self.h_sb) ** 2 * abs(self.h_br) ** 2

    @property
    def warden_backscatter_gain(self) -> float:
        """|h_SB|^2 |h_BW|^2, the double-reflection power gain towards W."""
        return abs(self.h_sb) ** 2 * abs(self.h_bw) ** 2


@dataclass(frozen=True)
class LiftedMatrices:
    """Rank-one quadratic-form matrices of the cascades and their lifted versions."""

    g_sb: np.ndarray
    g_br: np.ndarray
    g_sr: np.ndarray
    q_sb: np.ndarray
    q_br: np.ndarray
    q_sr: np.ndarray

    @property
    def num_elements(self) -> int:
        return self.g_sb.shape[0]
