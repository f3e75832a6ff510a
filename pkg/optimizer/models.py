"""Results of the phase-shift optimizers."""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

from channel.models import PhaseProfile
from detection.models import DepReport
from rates.capacity import Mode
from strategy.models import Regime


class StopReason(str, Enum):
    """Why a successive-approximation loop ended. Only TOLERANCE counts as converged."""
    TOLERANCE = "tolerance"
    NO_IMPROVEMENT = "no_improvement"
    NO_FEASIBLE_STEP = "no_feasible_step"
    SOLVER_FAILURE = "solver_failure"
    MAX_ITERATIONS = "max_iterations"


@dataclass(frozen=True)
class IterationRecord:
    """One successive-approximation step, accepted or not."""

    iteration: int
    surrogate_value: float
    objective: float
    rank_ratio: float
    lipschitz: float
    accepted: bool
    regime: Optional[Regime] = None


@dataclass
class OptimResult:
    """Optimized IRS phases with the resulting strategy and covertness.

    ``objective_trace`` holds the true objective after each accepted step:
    Gamma (nondecreasing) for PSR, the alpha lower bound (nonincreasing) for
    CSR.
    """

    mode: Mode
    phase: PhaseProfile
    alpha: float
    p: float
    tau: float
    dep: DepReport
    gamma: float
    iterations: int
    stop_reason: StopReason
    objective_trace: List[float] = field(default_factory=list)
    records: List[IterationRecord] = field(default_factory=list)
    regime: Optional[Regime] = None
    regime_flipped: bool = False

    @property
    def converged(self) -> bool:
        """True only when the relative change fell below the tolerance."""
        return self.stop_reason is StopReason.TOLERANCE

    @property
    def final_objective(self) -> float:
        return self.objective_trace[-1] if self.objective_trace else float("nan")

    @property
    def xi(self) -> float:
        return self.dep.xi
