"""Warden detection: error probabilities and optimal thresholds."""

from .models import DepMethod, DepReport, DetectionParams, Hypothesis, MissDetectionMode
from .monte_carlo import avg_dep_monte_carlo, dep_probability_form_monte_carlo
from .threshold import optimal_threshold_ratio_form, optimal_threshold, threshold_residual
from .warden import avg_dep_closed_form, prob_false_alarm, prob_miss_detection, received_power

__all__ = [
    "DepMethod",
    "DepReport",
    "DetectionParams",
    "Hypothesis",
    "MissDetectionMode",
    "avg_dep_closed_form",
    "avg_dep_monte_carlo",
    "dep_probability_form_monte_carlo",
    "optimal_threshold_ratio_form",
    "optimal_threshold",
    "prob_false_alarm",
    "prob_miss_detection",
    "received_power",
    "threshold_residual",
]
