"""Exceptions for the covert symbiotic-radio simulator."""

from typing import Any, Dict, Optional


class CovertRadioError(Exception):
    """Base exception for simulator errors."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.details = details or {}


class DomainError(CovertRadioError, ValueError):
    """Exception raised when an argument lies outside a function's domain."""

    def __init__(self, argument: str, value: Any, requirement: str):
        message = f"{argument}={value!r} is outside the domain ({requirement})"
        super().__init__(message, details={"argument": argument, "value": value})
        self.argument = argument
        self.value = value


class DimensionError(CovertRadioError, ValueError):
    """Exception raised when array shapes do not agree."""

    def __init__(self, what: str, expected: Any, actual: Any):
        message = f"{what}: expected {expected}, got {actual}"
        super().__init__(message, details={"expected": expected, "actual": actual})
        self.expected = expected
        self.actual = actual


class IntegrationError(CovertRadioError):
    """Exception raised when adaptive integration misses its tolerance."""

    def __init__(self, message: str = "Adaptive integration did not converge",
                 abserr: Optional[float] = None, tol: Optional[float] = None):
        super().__init__(message, details={"abserr": abserr, "tol": tol})
        self.abserr = abserr
        self.tol = tol


class BracketError(CovertRadioError):
    """Exception raised when a root bracket shows no sign change."""

    def __init__(self, lo: float, hi: float, f_lo: float, f_hi: float):
        message = f"No sign change on [{lo:.6g}, {hi:.6g}] (f={f_lo:.3g}, {f_hi:.3g})"
        super().__init__(message, details={"lo": lo, "hi": hi, "f_lo": f_lo, "f_hi": f_hi})
        self.lo = lo
        self.hi = hi
        self.f_lo = f_lo
        self.f_hi = f_hi


class RootFindingError(CovertRadioError):
    """Exception raised when a bracketed root misses the residual tolerance."""

    def __init__(self, root: float, residual: float, tol: float):
        message = f"Residual {residual:.3g} at x={root:.9g} exceeds tolerance {tol:.3g}"
        super().__init__(message, details={"root": root, "residual": residual, "tol": tol})
        self.root = root
        self.residual = residual
        self.tol = tol


class SolverError(CovertRadioError):
    """Exception raised when the conic solver backend fails outright."""

    def __init__(self, message: str = "SDP solver failed", status: Optional[str] = None):
        super().__init__(message, details={"status": status})
        self.status = status


class RelaxationError(CovertRadioError):
    """Exception raised when rank-one relaxation cannot tighten further."""

    def __init__(self, delta: float, step: float, rank_ratio: float):
        message = (
            f"Rank-one relaxation stalled at delta={delta:.4f} "
            f"(step {step:.2e}, rank ratio {rank_ratio:.6f})"
        )
        super().__init__(message, details={"delta": delta, "step": step, "rank_ratio": rank_ratio})
        self.delta = delta
        self.step = step
        self.rank_ratio = rank_ratio


class DegenerateEigenvectorError(CovertRadioError):
    """Exception raised when the principal eigenvector is not well defined."""

    def __init__(self, gap: float, rank_ratio: float):
        message = f"Principal eigenvalue not simple (gap {gap:.3g}, rank ratio {rank_ratio:.4f})"
        super().__init__(message, details={"gap": gap, "rank_ratio": rank_ratio})
        self.gap = gap
        self.rank_ratio = rank_ratio


class SurrogateValidationError(CovertRadioError):
    """Exception raised when the quadratic minorant disagrees with the descent lemma."""

    def __init__(self, max_discrepancy: float):
        message = f"Surrogate disagrees with descent-lemma form (max discrepancy {max_discrepancy:.3g})"
        super().__init__(message, details={"max_discrepancy": max_discrepancy})
        self.max_discrepancy = max_discrepancy


class InfeasibleInstanceError(CovertRadioError):
    """Exception raised when rate constraints admit no solution."""

    def __init__(self, reason: str):
        super().__init__(f"Infeasible instance: {reason}", details={"reason": reason})
        self.reason = reason


class ScenarioConfigError(CovertRadioError):
    """Exception raised for malformed scenario or SDP dump files."""

    def __init__(self, message: str, path: Optional[str] = None,
                 line: Optional[int] = None, key: Optional[str] = None):
        location = path or "<scenario>"
        if line is not None:
            location = f"{location}:{line}"
        super().__init__(f"{location}: {message}", details={"path": path, "line": line, "key": key})
        self.path = path
        self.line = line
        self.key = key


class OutputError(CovertRadioError):
    """Exception raised when a result file cannot be written."""

    def __init__(self, path: str, reason: str):
        super().__init__(f"Cannot write {path}: {reason}", details={"path": path, "reason": reason})
        self.path = path
        self.reason = reason
