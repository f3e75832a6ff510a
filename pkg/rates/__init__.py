"""Achievable-rate formulas and SIC/QoS checks."""

from .capacity import (
    Mode,
    RateReport,
    rate_c_csr,
    rate_c_psr,
    rate_report,
    rate_s_csr,
    rate_s_psr,
    sic_check_csr,
)

__all__ = [
    "Mode",
    "RateReport",
    "rate_c_csr",
    "rate_c_psr",
    "rate_report",
    "rate_s_csr",
    "rate_s_psr",
    "sic_check_csr",
]
