"""Scenario geometry, fading channels and IRS cascades."""

from .models import CascadeGains, ChannelRealization, LiftedMatrices, PathLossModel, PhaseProfile
from .propagation import (
    build_lifted,
    cascade_gain,
    cascade_gains,
    lift,
    path_loss_linear,
    sample_channels,
)

__all__ = [
    "CascadeGains",
    "ChannelRealization",
    "LiftedMatrices",
    "PathLossModel",
    "PhaseProfile",
    "build_lifted",
    "cascade_gain",
    "cascade_gains",
    "lift",
    "path_loss_linear",
    "sample_channels",
]
