"""Data models for small Hermitian semidefinite programs."""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from utils.constants import RANK_ONE_TARGET, SROCR_INITIAL_STEP, SROCR_MIN_STEP
from utils.exceptions import DimensionError, DomainError

HERMITIAN_TOL = 1e-9


class Relation(str, Enum):
    LE = "<="
    EQ = "="
    GE = ">="


class Sense(str, Enum):
    MAX = "max"
    MIN = "min"


class SdpStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    MAX_ITER = "max-iter"


def _check_hermitian(matrix: np.ndarray, what: str) -> np.ndarray:
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionError(what, "square matrix", matrix.shape)
    scale = max(1.0, float(np.max(np.abs(matrix))) if matrix.size else 1.0)
    if np.max(np.abs(matrix - matrix.conj().T), initial=0.0) > HERMITIAN_TOL * scale:
        raise DomainError(what, "non-Hermitian matrix", "A = A^H")
    return matrix


@dataclass(frozen=True)
class LinearConstraint:
    """Tr(A V) <relation> bound."""

    matrix: np.ndarray
    relation: Relation
    bound: float
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "matrix", _check_hermitian(self.matrix, f"constraint {self.name or ''}".strip()))
        object.__setattr__(self, "bound", float(self.bound))

    def value(self, v: np.ndarray) -> float:
        return float(np.real(np.trace(self.matrix @ v)))

    def violation(self, v: np.ndarray) -> float:
        """How far V is from satisfying the constraint (0 when satisfied)."""
        lhs = self.value(v)
        if self.relation is Relation.LE:
            return max(0.0, lhs - self.bound)
        if self.relation is Relation.GE:
            return max(0.0, self.bound - lhs)
        return abs(lhs - self.bound)


@dataclass(frozen=True)
class SdpProblem:
    """Optimize Tr(C V) over Hermitian PSD V subject to linear trace constraints.

    With ``unit_diagonal`` the solver also enforces V[m, m] = 1 for every m.
    """

    objective: np.ndarray
    sense: Sense = Sense.MAX
    constraints: Tuple[LinearConstraint, ...] = field(default=())
    unit_diagonal: bool = True

    def __post_init__(self):
        objective = _check_hermitian(self.objective, "objective")
        object.__setattr__(self, "objective", objective)
        object.__setattr__(self, "constraints", tuple(self.constraints))
        n = objective.shape[0]
        if n < 1:
            raise DimensionError("objective", "n >= 1", n)
        for constraint in self.constraints:
            if constraint.matrix.shape != (n, n):
                raise DimensionError(f"constraint {constraint.name}".strip(), (n, n), constraint.matrix.shape)

    @property
    def dimension(self) -> int:
        return self.objective.shape[0]

    def with_constraint(self, constraint: LinearConstraint) -> "SdpProblem":
        return replace(self, constraints=self.constraints + (constraint,))

    def all_constraints(self) -> Tuple[LinearConstraint, ...]:
        """Explicit constraints followed by the unit-diagonal equalities."""
        if not self.unit_diagonal:
            return self.constraints
        n = self.dimension
        diagonal = []
        for m in range(n):
            e = np.zeros((n, n), dtype=complex)
            e[m, m] = 1.0
            diagonal.append(LinearConstraint(e, Relation.EQ, 1.0, name=f"diag{m}"))
        return self.constraints + tuple(diagonal)

    def objective_value(self, v: np.ndarray) -> float:
        return float(np.real(np.trace(self.objective @ v)))

    def max_violation(self, v: np.ndarray) -> float:
        return max((c.violation(v) for c in self.all_constraints()), default=0.0)


def rank_ratio(v: np.ndarray) -> float:
    """lambda_max(V) / Tr(V); 0 for a zero matrix."""
    eigenvalues = np.linalg.eigvalsh(v)
    trace = float(np.sum(eigenvalues))
    if trace <= 0.0:
        return 0.0
    return float(eigenvalues[-1] / trace)


@dataclass(frozen=True)
class SdpSolution:
    """Solver output with rank diagnostics."""

    v: np.ndarray
    objective: float
    status: SdpStatus
    rank_ratio: float
    dual_bound: Optional[float] = None
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is SdpStatus.OPTIMAL

    @property
    def principal(self) -> Tuple[float, np.ndarray]:
        """Largest eigenvalue of V and its unit eigenvector."""
        eigenvalues, eigenvectors = np.linalg.eigh(self.v)
        return float(eigenvalues[-1]), eigenvectors[:, -1]


@dataclass(frozen=True)
class RelaxationSchedule:
    """Step control of the sequential rank-one relaxation."""

    initial_step: float = SROCR_INITIAL_STEP
    min_step: float = SROCR_MIN_STEP
    rank_target: float = RANK_ONE_TARGET
    max_solves: int = 200

    def __post_init__(self):
        if not 0 < self.min_step <= self.initial_step <= 1:
            raise DomainError("step", (self.min_step, self.initial_step), "0 < min_step <= initial_step <= 1")

    @classmethod
    def from_config(cls, config) -> "RelaxationSchedule":
        return cls(
            initial_step=config.srocr_initial_step,
            min_step=config.srocr_min_step,
            rank_target=config.rank_target,
        )
