"""Sweep progress reporting and run statistics."""

from .statistics import PointStats, StatisticsTracker, SweepStats
from .sweep_progress import SweepProgress

__all__ = [
    "PointStats",
    "StatisticsTracker",
    "SweepProgress",
    "SweepStats",
]
