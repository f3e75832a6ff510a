"""Bracketed scalar root finding."""

from typing import Callable

import numpy as np
from scipy import optimize

from utils.exceptions import BracketError, DomainError, RootFindingError


def find_root_bracketed(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float,
    max_iter: int = 200,
) -> float:
    """Find a sign change of f inside [lo, hi].

    Brent's method keeps the root bracketed at every step, falling back to
    bisection whenever interpolation would leave the bracket.

    Args:
        f: Continuous function
        lo: Left end
        hi: Right end
        tol: Required |f(root)|
        max_iter: Iteration budget

    Returns:
        x with |f(x)| <= tol

    Raises:
        BracketError: if f(lo) and f(hi) have the same sign
        RootFindingError: if the residual at the converged point exceeds tol
    """
    if not lo < hi:
        raise DomainError("bracket", (lo, hi), "lo < hi")
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if np.sign(f_lo) == np.sign(f_hi):
        raise BracketError(lo, hi, f_lo, f_hi)

    xtol = max(abs(lo), abs(hi)) * 1e-15 + 1e-300
    root = optimize.brentq(f, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=max_iter)
    residual = f(root)
    if abs(residual) > tol:
        raise RootFindingError(root, residual, tol)
    return float(root)
