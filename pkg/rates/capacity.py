"""Achievable rates of the parasitic (PSR) and commensal (CSR) strategies."""

import math
from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field

from channel.models import CascadeGains
from utils.constants import RATE_TOLERANCE


class Mode(str, Enum):
    """Symbiotic-radio transmission strategy."""
    PSR = "psr"
    CSR = "csr"


class RateReport(BaseModel):
    """Rates of one operating point with their feasibility flags."""

    r_s: float = Field(..., ge=0, description="Primary rate at R (bit/s/Hz)")
    r_c: float = Field(..., ge=0, description="Backscatter rate at R (bit/s/Hz)")
    mode: Mode
    sic_feasible: bool
    qos_feasible: bool


def rate_s_psr(p: float, alpha: float, gains: CascadeGains, sigma2: float) -> float:
    """Primary rate with the backscatter signal treated as interference."""
    interference = alpha * p * gains.backscatter_gain
    return math.log2(1.0 + p * abs(gains.h_sr) ** 2 / (interference + sigma2))


def rate_c_psr(p: float, alpha: float, gains: CascadeGains, sigma2: float) -> float:
    """Backscatter rate after SIC; |s(n)| = 1 makes the expectation exact."""
    return math.log2(1.0 + alpha * p * gains.backscatter_gain / sigma2)


def rate_c_psr_monte_carlo(
    p: float,
    alpha: float,
    gains: CascadeGains,
    sigma2: float,
    generator: np.random.Generator,
    draws: int = 1000,
) -> float:
    """Average of log2(1 + alpha p |s|^2 |h_SB h_BR|^2 / sigma2) over unit-modulus s draws."""
    s = np.exp(1j * generator.uniform(0.0, 2.0 * math.pi, size=draws))
    snr = alpha * p * np.abs(s) ** 2 * gains.backscatter_gain / sigma2
    return float(np.mean(np.log2(1.0 + snr)))


def _csr_branch_snrs(p: float, alpha: float, gains: CascadeGains, sigma2: float):
    reflected = math.sqrt(alpha) * gains.h_sb * gains.h_br
    plus = p * abs(gains.h_sr + reflected) ** 2 / sigma2
    minus = p * abs(gains.h_sr - reflected) ** 2 / sigma2
    return plus, minus


def rate_s_csr(p: float, alpha: float, gains: CascadeGains, sigma2: float) -> float:
    """Primary rate with the backscatter symbol c = +-1 acting as extra multipath."""
    plus, minus = _csr_branch_snrs(p, alpha, gains, sigma2)
    return 0.5 * math.log2(1.0 + plus) + 0.5 * math.log2(1.0 + minus)


def rate_c_csr(p: float, alpha: float, gains: CascadeGains, sigma2: float, eta: int) -> float:
    """Backscatter rate with eta primary symbols per backscatter symbol."""
    if eta < 1:
        raise ValueError(f"eta must be >= 1, got {eta}")
    return math.log2(1.0 + eta * alpha * p * gains.backscatter_gain / sigma2) / eta


def sic_check_csr(p: float, alpha: float, gains: CascadeGains, sigma2: float, eps_sic: float) -> bool:
    """True iff the two-branch CSR primary rate meets eps_sic."""
    return rate_s_csr(p, alpha, gains, sigma2) >= eps_sic - RATE_TOLERANCE


def rate_report(
    mode: Mode,
    p: float,
    alpha: float,
    gains: CascadeGains,
    sigma2: float,
    eps_sic: float,
    eps_c: float,
    eta: Optional[int] = None,
) -> RateReport:
    """Evaluate both rates of a strategy and check them against the requirements."""
    if mode is Mode.PSR:
        r_s = rate_s_psr(p, alpha, gains, sigma2)
        r_c = rate_c_psr(p, alpha, gains, sigma2)
    else:
        r_s = rate_s_csr(p, alpha, gains, sigma2)
        r_c = rate_c_csr(p, alpha, gains, sigma2, eta or 1)
    return RateReport(
        r_s=r_s,
        r_c=r_c,
        mode=mode,
        sic_feasible=r_s >= eps_sic - RATE_TOLERANCE,
        qos_feasible=r_c >= eps_c - RATE_TOLERANCE,
    )
