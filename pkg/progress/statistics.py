"""Statistics tracking for parameter sweeps."""

import threading
from dataclasses import dataclass, field
from datetime import datetime
from typing import Dict, Optional

from logs.logger import get_logger
from utils.helpers import format_duration

logger = get_logger(__name__)


@dataclass
class PointStats:
    """Statistics for a single sweep point."""
    index: int
    value: float
    rows: int = 0
    infeasible_rows: int = 0
    elapsed_seconds: float = 0.0


@dataclass
class SweepStats:
    """Overall sweep statistics."""
    experiment: str
    parameter: str
    total_points: int = 0
    completed_points: int = 0
    total_rows: int = 0
    infeasible_rows: int = 0
    start_time: Optional[datetime] = None
    end_time: Optional[datetime] = None
    points: Dict[int, PointStats] = field(default_factory=dict)

    @property
    def duration_seconds(self) -> float:
        """Get total duration in seconds."""
        if not self.start_time:
            return 0.0
        end = self.end_time or datetime.now()
        return max(0.0, (end - self.start_time).total_seconds())

    @property
    def completion_percentage(self) -> float:
        if self.total_points == 0:
            return 0.0
        return (self.completed_points / self.total_points) * 100

    @property
    def compute_seconds(self) -> float:
        """Summed per-point time; exceeds the wall time when points run in parallel."""
        return sum(point.elapsed_seconds for point in self.points.values())


class StatisticsTracker:
    """Tracks completed sweep points and infeasible rows.

    Points may finish on worker threads, so recording is locked.
    """

    def __init__(self, experiment: str, parameter: str, total_points: int):
        self.stats = SweepStats(experiment=experiment, parameter=parameter, total_points=total_points)
        self._lock = threading.Lock()

    def start_session(self) -> None:
        """Start timing the sweep."""
        self.stats.start_time = datetime.now()
        logger.debug(f"{self.stats.experiment}: sweep of {self.stats.total_points} points started")

    def end_session(self) -> None:
        """Stop timing and log the run summary."""
        self.stats.end_time = datetime.now()
        logger.info(self.get_human_readable_summary())

    def record_point(self, index: int, value: float, rows: int, infeasible_rows: int, elapsed: float) -> None:
        """Record a finished sweep point.

        Args:
            index: Position of the point in the sweep
            value: Swept parameter value
            rows: Result rows the point produced
            infeasible_rows: Rows flagged infeasible
            elapsed: Wall time of the point in seconds
        """
        with self._lock:
            self.stats.points[index] = PointStats(index, value, rows, infeasible_rows, elapsed)
            self.stats.completed_points += 1
            self.stats.total_rows += rows
            self.stats.infeasible_rows += infeasible_rows

    def get_human_readable_summary(self) -> str:
        stats = self.stats
        return (
            f"{stats.experiment}: {stats.completed_points}/{stats.total_points} points over "
            f"{stats.parameter}, {stats.total_rows} rows ({stats.infeasible_rows} infeasible) "
            f"in {format_duration(stats.duration_seconds)}"
        )
