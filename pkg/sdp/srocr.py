"""Sequential rank-one constraint relaxation and phase extraction."""

from typing import Optional

import numpy as np

from channel.models import PhaseProfile
from logs.logger import get_logger, log_srocr_step
from sdp.models import LinearConstraint, Relation, RelaxationSchedule, SdpProblem, SdpSolution
from sdp.solver import solve_sdp
from utils.constants import DEFAULT_SOLVER_TOL
from utils.exceptions import DegenerateEigenvectorError, RelaxationError, SolverError

logger = get_logger(__name__)

EXTRACTION_RANK_FLOOR = 0.9
EIGEN_GAP_TOL = 1e-10


def _rank_constraint(u: np.ndarray, delta: float) -> LinearConstraint:
    """Tr((u u^H - delta I) V) >= 0, i.e. u^H V u >= delta Tr(V)."""
    n = u.size
    a = np.outer(u, np.conj(u)) - delta * np.eye(n)
    return LinearConstraint((a + a.conj().T) / 2.0, Relation.GE, 0.0, name=f"rank1[{delta:.4f}]")


def _try_solve(problem: SdpProblem, tol: float) -> Optional[SdpSolution]:
    try:
        solution = solve_sdp(problem, tol)
    except SolverError as e:
        logger.debug(f"SROCR sub-problem failed: {e}")
        return None
    return solution if solution.optimal else None


def srocr(
    problem: SdpProblem,
    schedule: Optional[RelaxationSchedule] = None,
    tol: float = DEFAULT_SOLVER_TOL,
) -> SdpSolution:
    """Drive the relaxed SDP towards a rank-one solution.

    Each round adds u^H V u >= delta Tr(V) with u the principal eigenvector
    of the previous solution and raises delta by the current step; an
    infeasible round halves the step. The loop ends once the rank ratio
    reaches the schedule's target.

    Args:
        problem: Relaxed program (without rank constraint)
        schedule: Step parameters
        tol: Solver tolerance

    Returns:
        A solution with rank_ratio >= schedule.rank_target, or the base
        solution unchanged when it is not optimal

    Raises:
        RelaxationError: if the step falls below the schedule's floor
    """
    schedule = schedule or RelaxationSchedule()
    current = solve_sdp(problem, tol)
    if not current.optimal or current.rank_ratio >= schedule.rank_target:
        return current

    delta, step = 0.0, schedule.initial_step
    for _ in range(schedule.max_solves):
        if current.rank_ratio >= schedule.rank_target:
            return current
        candidate = min(1.0, delta + step)
        _, u = current.principal
        solution = _try_solve(problem.with_constraint(_rank_constraint(u, candidate)), tol)
        if solution is None:
            log_srocr_step(logger, candidate, step, "rejected", current.rank_ratio)
            step /= 2.0
            if step < schedule.min_step:
                logger.warning(f"SROCR stalled at delta={delta:.4f} (rank {current.rank_ratio:.6f})")
                raise RelaxationError(delta, step, current.rank_ratio)
            continue
        delta, current = candidate, solution
        log_srocr_step(logger, delta, step, "accepted", current.rank_ratio)
        if delta >= 1.0 and current.rank_ratio < schedule.rank_target:
            raise RelaxationError(delta, step, current.rank_ratio)
    if current.rank_ratio >= schedule.rank_target:
        return current
    raise RelaxationError(delta, step, current.rank_ratio)


def extract_phase(solution: SdpSolution) -> PhaseProfile:
    """Unit-modulus phases from the principal eigenvector of a lifted V.

    The first n-1 entries of the eigenvector are referenced to the phase of
    its last entry, the lifting coordinate.

    Raises:
        DegenerateEigenvectorError: if V is far from rank one or its largest
            eigenvalue is not simple
    """
    v = solution.v
    n = v.shape[0]
    if n == 2:
        return PhaseProfile.zeros(1)
    eigenvalues, eigenvectors = np.linalg.eigh(v)
    trace = float(np.sum(eigenvalues))
    gap = float(eigenvalues[-1] - eigenvalues[-2]) if n > 1 else float(eigenvalues[-1])
    if solution.rank_ratio < EXTRACTION_RANK_FLOOR or gap <= EIGEN_GAP_TOL * max(trace, 0.0):
        raise DegenerateEigenvectorError(gap, solution.rank_ratio)
    x = eigenvectors[:, -1]
    return PhaseProfile(theta=np.angle(x[:-1]) - np.angle(x[-1]))
