"""Builders shared by several test modules."""

import dataclasses

import numpy as np

from channel.propagation import sample_channels
from config.scenario import SystemConfig
from detection.models import DetectionParams
from numerics.rng import RngStream

UNIT_LOSSES = (1.0, 1.0, 1.0, 1.0)


def unit_loss_params(tau: float, alpha: float = 0.2, p: float = 1.0,
                     num_elements: int = 10, sigma2: float = 1.0) -> DetectionParams:
    """Detection parameters with l1 = l2 = 1."""
    return DetectionParams.from_losses(tau, p, alpha, num_elements, UNIT_LOSSES, sigma2)


def unit_loss_channels(config: SystemConfig, stream: RngStream):
    """A channel draw of the scenario with every IRS link loss set to 1."""
    return dataclasses.replace(sample_channels(config, stream), losses=UNIT_LOSSES)


def random_unit_vector(generator: np.random.Generator, size: int) -> np.ndarray:
    return np.exp(1j * generator.uniform(0.0, 2.0 * np.pi, size))
