"""Data models for the warden's hypothesis test."""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from pydantic import BaseModel, Field, model_validator


class Hypothesis(str, Enum):
    """H0: the backscatter device is silent; H1: it transmits."""
    H0 = "h0"
    H1 = "h1"


class MissDetectionMode(str, Enum):
    INTEGRAL = "integral"
    QUADRATURE = "quadrature"
    AUTO = "auto"


class DepMethod(str, Enum):
    CLOSED_FORM = "closed-form"
    QUADRATURE = "quadrature"
    MONTE_CARLO = "monte-carlo"


@dataclass(frozen=True)
class DetectionParams:
    """Parameters of the average-power test at the warden.

    l1 = L(d_S) L(d_W) and l2 = l1 L(d_B)^2 are the path losses of the direct
    and double-reflection warden links; z is derived on access.
    """

    tau: float
    p: float
    alpha: float
    lam: float
    l1: float
    l2: float
    sigma2: float

    def __post_init__(self):
        if not self.p > 0:
            raise ValueError(f"p must be positive, got {self.p}")
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if not (self.l1 > 0 and self.l2 > 0 and self.sigma2 > 0 and self.lam > 0):
            raise ValueError("lam, l1, l2 and sigma2 must be positive")

    @classmethod
    def from_losses(
        cls,
        tau: float,
        p: float,
        alpha: float,
        num_elements: int,
        losses: Sequence[float],
        sigma2: float,
    ) -> "DetectionParams":
        """Build from the IRS link losses ordered (S, B, R, W)."""
        l_s, l_b, _, l_w = losses
        l1 = l_s * l_w
        return cls(tau=tau, p=p, alpha=alpha, lam=1.0 / num_elements, l1=l1, l2=l1 * l_b ** 2, sigma2=sigma2)

    def with_threshold(self, tau: float) -> "DetectionParams":
        return DetectionParams(tau, self.p, self.alpha, self.lam, self.l1, self.l2, self.sigma2)

    @property
    def z(self) -> float:
        return (self.tau - self.sigma2) / self.p

    @property
    def upper_limit(self) -> float:
        """U = 2 lam sqrt(l2 z / alpha), the miss-detection limit after u = 2 lam sqrt(x)."""
        return 2.0 * self.lam * math.sqrt(max(self.z, 0.0) * self.l2 / self.alpha)

    @property
    def direct_exponent(self) -> float:
        """a = lam l1 z."""
        return self.lam * self.l1 * max(self.z, 0.0)


class DepReport(BaseModel):
    """False-alarm, miss-detection and average detection error probabilities."""

    p_fa: float = Field(..., ge=0, le=1)
    p_md: float = Field(..., ge=0, le=1)
    xi: float = Field(..., ge=0, le=2)
    method: DepMethod
    trials: Optional[int] = Field(None, ge=1)
    quadrature_order: Optional[int] = Field(None, ge=1)
    std_error: Optional[float] = Field(None, ge=0)

    @model_validator(mode="after")
    def validate_sum(self) -> "DepReport":
        """xi is the sum of the two error probabilities."""
        if abs(self.xi - (self.p_fa + self.p_md)) > 1e-12:
            raise ValueError("xi must equal p_fa + p_md")
        return self
