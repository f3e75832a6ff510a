"""Successive-approximation phase-shift optimizers for PSR and CSR."""

from .models import IterationRecord, OptimResult, StopReason
from .pap import pap_solve
from .plm import plm_solve, taylor_chi_upper
from .surrogate import Surrogate, build_surrogate, gamma, gamma_gradient, random_unit_modulus

__all__ = [
    "IterationRecord",
    "OptimResult",
    "StopReason",
    "Surrogate",
    "build_surrogate",
    "gamma",
    "gamma_gradient",
    "pap_solve",
    "plm_solve",
    "random_unit_modulus",
    "taylor_chi_upper",
]
