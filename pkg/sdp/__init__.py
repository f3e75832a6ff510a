"""Small Hermitian SDPs, rank-one relaxation and phase extraction."""

from .dump import dump_problem, load_problem
from .models import (
    LinearConstraint,
    Relation,
    RelaxationSchedule,
    SdpProblem,
    SdpSolution,
    SdpStatus,
    Sense,
    rank_ratio,
)
from .solver import solve_sdp
from .srocr import extract_phase, srocr

__all__ = [
    "LinearConstraint",
    "Relation",
    "RelaxationSchedule",
    "SdpProblem",
    "SdpSolution",
    "SdpStatus",
    "Sense",
    "dump_problem",
    "extract_phase",
    "load_problem",
    "rank_ratio",
    "solve_sdp",
    "srocr",
]
