"""Reflection coefficient, power and regime selection."""

from .allocation import (
    alpha_lower_csr,
    alpha_region_csr,
    alpha_region_psr,
    compare_sic_bounds,
    dep_fixed_threshold,
    enforce_exact_sic,
    expected_omega,
    feasibility_predicate,
    interior_power_minimizer,
    min_feasible_power,
    optimal_power_fixed_tau,
    qos_alpha_csr,
    snr_regime,
)
from .models import AlphaRegion, Regime, SicBoundComparison

__all__ = [
    "AlphaRegion",
    "Regime",
    "SicBoundComparison",
    "alpha_lower_csr",
    "alpha_region_csr",
    "alpha_region_psr",
    "compare_sic_bounds",
    "dep_fixed_threshold",
    "enforce_exact_sic",
    "expected_omega",
    "feasibility_predicate",
    "interior_power_minimizer",
    "min_feasible_power",
    "optimal_power_fixed_tau",
    "qos_alpha_csr",
    "snr_regime",
]
