"""Interior-point solution of Hermitian SDPs through cvxopt.

A Hermitian n x n V is handled through the real symmetric 2n x 2n embedding
Z = [[Re V, -Im V], [Im V, Re V]], for which Tr(A V) = Tr(A_r Z)/2. The
program

    max Tr(C V)  s.t.  Tr(A_i V) {<=, =, >=} b_i,  V >= 0

is passed to cvxopt as the dual of its standard cone program: the PSD
dual variable zs is Z and the primal variables y carry one entry per trace
constraint. V is read back from zs by averaging the two embedded copies.
"""

from typing import List, Optional, Tuple

import numpy as np
from cvxopt import matrix, solvers

from logs.logger import get_logger
from sdp.models import Relation, SdpProblem, SdpSolution, SdpStatus, Sense, rank_ratio
from utils.constants import DEFAULT_SOLVER_TOL
from utils.exceptions import SolverError

logger = get_logger(__name__)

MAX_SOLVER_ITERATIONS = 200


def realify(h: np.ndarray) -> np.ndarray:
    """[[Re H, -Im H], [Im H, Re H]]."""
    re, im = np.real(h), np.imag(h)
    return np.block([[re, -im], [im, re]])


def complexify(z: np.ndarray) -> np.ndarray:
    """Hermitian V from a symmetric 2n x 2n embedding, averaging both copies."""
    n = z.shape[0] // 2
    z11, z12, z21, z22 = z[:n, :n], z[:n, n:], z[n:, :n], z[n:, n:]
    v = (z11 + z22) / 2.0 + 1j * (z21 - z12) / 2.0
    return (v + v.conj().T) / 2.0


def _normalized(a: np.ndarray, b: float) -> Tuple[np.ndarray, float]:
    scale = float(np.linalg.norm(a))
    if scale == 0.0:
        return a, b
    return a / scale, b / scale


def _cone_data(problem: SdpProblem):
    constraints = problem.all_constraints()
    objective = problem.objective if problem.sense is Sense.MAX else -problem.objective
    c_scale = float(np.linalg.norm(objective)) or 1.0

    columns: List[np.ndarray] = []
    bounds: List[float] = []
    inequality_rows: List[Tuple[int, float]] = []
    for index, constraint in enumerate(constraints):
        a, b = _normalized(constraint.matrix, constraint.bound)
        columns.append(-(realify(a) / 2.0).reshape(-1, order="F"))
        bounds.append(b)
        if constraint.relation is Relation.LE:
            inequality_rows.append((index, -1.0))
        elif constraint.relation is Relation.GE:
            inequality_rows.append((index, 1.0))

    k = len(constraints)
    c = matrix(np.asarray(bounds, dtype=float).reshape(k, 1))
    gs = [matrix(np.asfortranarray(np.column_stack(columns)))]
    hs = [matrix(np.asfortranarray(-realify(objective / c_scale) / 2.0))]
    if inequality_rows:
        gl_dense = np.zeros((len(inequality_rows), k))
        for row, (index, sign) in enumerate(inequality_rows):
            gl_dense[row, index] = sign
        gl, hl = matrix(gl_dense), matrix(np.zeros((len(inequality_rows), 1)))
    else:
        gl, hl = None, None
    return c, gl, hl, gs, hs, c_scale


def _status(raw: str) -> SdpStatus:
    if raw == "optimal":
        return SdpStatus.OPTIMAL
    if raw == "dual infeasible":
        return SdpStatus.INFEASIBLE
    return SdpStatus.MAX_ITER


def solve_sdp(
    problem: SdpProblem,
    tol: float = DEFAULT_SOLVER_TOL,
    max_iterations: int = MAX_SOLVER_ITERATIONS,
) -> SdpSolution:
    """Solve a Hermitian SDP with cvxopt's primal-dual interior-point method.

    Args:
        problem: Program to solve
        tol: Absolute and relative duality-gap tolerance
        max_iterations: Interior-point iteration budget

    Returns:
        SdpSolution; INFEASIBLE when no PSD V meets the constraints and
        MAX_ITER when the solver stalls

    Raises:
        SolverError: if cvxopt fails with a numerical exception
    """
    if not problem.all_constraints():
        raise SolverError("Program without constraints is unbounded", status="unbounded")
    c, gl, hl, gs, hs, c_scale = _cone_data(problem)
    options = {
        "show_progress": False,
        "abstol": tol,
        "reltol": tol,
        "feastol": max(tol, 1e-9),
        "maxiters": max_iterations,
    }
    try:
        result = solvers.sdp(c, Gl=gl, hl=hl, Gs=gs, hs=hs, options=options)
    except (ArithmeticError, ValueError) as e:
        raise SolverError(f"cvxopt failed: {e}", status="exception") from e

    status = _status(result["status"])
    if result["zs"] is None or not result["zs"]:
        return SdpSolution(
            v=np.zeros((problem.dimension, problem.dimension), dtype=complex),
            objective=float("nan"),
            status=SdpStatus.INFEASIBLE if status is SdpStatus.INFEASIBLE else SdpStatus.MAX_ITER,
            rank_ratio=0.0,
            iterations=int(result.get("iterations") or 0),
        )

    z = np.array(result["zs"][0])
    z = (z + z.T) / 2.0
    v = complexify(z)
    dual_bound: Optional[float] = None
    if result.get("primal objective") is not None:
        dual_bound = c_scale * float(result["primal objective"])
        if problem.sense is Sense.MIN:
            dual_bound = -dual_bound

    solution = SdpSolution(
        v=v,
        objective=problem.objective_value(v),
        status=status,
        rank_ratio=rank_ratio(v),
        dual_bound=dual_bound,
        iterations=int(result.get("iterations") or 0),
    )
    logger.debug(
        f"SDP n={problem.dimension} constraints={len(problem.constraints)}: {result['status']} "
        f"after {solution.iterations} iterations, objective={solution.objective:.6g}, "
        f"rank={solution.rank_ratio:.6f}"
    )
    return solution
