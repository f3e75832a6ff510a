"""Data models for reflection-coefficient and power selection."""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from pydantic import BaseModel


class Regime(str, Enum):
    """Primary-link SNR regime of the commensal strategy."""
    LOW = "low"
    HIGH = "high"


@dataclass(frozen=True)
class AlphaRegion:
    """Interval of reflection coefficients meeting the rate constraints."""

    lower: float
    upper: float
    feasible: bool

    @classmethod
    def from_bounds(cls, lower: float, upper: float) -> "AlphaRegion":
        feasible = math.isfinite(lower) and 0.0 < lower <= min(1.0, upper)
        return cls(lower=lower, upper=upper, feasible=feasible)

    @property
    def chosen(self) -> Optional[float]:
        """The lower bound, which maximizes the warden's error, or None when infeasible."""
        return self.lower if self.feasible else None

    @property
    def effective_upper(self) -> float:
        return min(1.0, self.upper)


class SicBoundComparison(BaseModel):
    """CSR alpha lower bounds under each SIC treatment, plus the QoS-only bound."""

    regime: Regime
    qos: float
    exact: float
    worst_case: float
    published: float
