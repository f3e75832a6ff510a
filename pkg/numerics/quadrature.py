"""Gauss-Chebyshev rule and adaptive integration."""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from numpy.polynomial import chebyshev
from scipy import integrate

from logs.logger import get_logger
from utils.exceptions import DomainError, IntegrationError

logger = get_logger(__name__)


@dataclass(frozen=True)
class QuadratureRule:
    """Q-point Gauss-Chebyshev rule of the first kind on (-1, 1).

    Nodes are cos((2q-1)pi/(2Q)), q = 1..Q, in decreasing order; every weight
    is pi/Q.
    """

    order: int
    nodes: np.ndarray

    @property
    def weight(self) -> float:
        return math.pi / self.order

    def integrate(self, g: Callable[[np.ndarray], np.ndarray]) -> float:
        """Approximate the integral of g over (-1, 1).

        The rule integrates h(x)/sqrt(1-x^2); g is rewritten as
        h(x) = g(x)*sqrt(1-x^2).
        """
        x = self.nodes
        return float(self.weight * np.sum(np.sqrt(1.0 - x * x) * g(x)))


def chebyshev_nodes(order: int) -> QuadratureRule:
    """Build the Q-point Gauss-Chebyshev rule.

    Args:
        order: Number of nodes Q >= 1

    Returns:
        QuadratureRule with strictly decreasing nodes
    """
    if order < 1:
        raise DomainError("order", order, "Q >= 1")
    nodes, _ = chebyshev.chebgauss(order)
    return QuadratureRule(order=order, nodes=np.asarray(nodes, dtype=float))


def integrate_adaptive(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float,
    rel_tol: float = 0.0,
    limit: int = 200,
) -> float:
    """Adaptive Gauss-Kronrod integration with extrapolation.

    QUADPACK never evaluates the endpoints, so an integrable singularity at
    ``a`` (such as the logarithmic one of K0) is handled directly. ``b`` may be
    ``np.inf``.

    Args:
        f: Integrand
        a: Lower limit
        b: Upper limit, a < b
        tol: Absolute error target
        rel_tol: Relative error target; the looser of the two applies
        limit: Subinterval budget

    Returns:
        The integral

    Raises:
        IntegrationError: if the error estimate misses both targets
    """
    if not a < b:
        raise DomainError("interval", (a, b), "a < b")
    value, abserr, info = integrate.quad(
        f, a, b, epsabs=tol, epsrel=rel_tol, limit=limit, full_output=1
    )[:3]
    if not math.isfinite(value):
        raise IntegrationError("Integrand produced a non-finite result", abserr=abserr, tol=tol)
    if abserr > max(tol, rel_tol * abs(value)) * 10.0:
        raise IntegrationError(
            f"Integration on [{a:.6g}, {b:.6g}] stopped at error {abserr:.3g} "
            f"after {info['neval']} evaluations",
            abserr=abserr,
            tol=tol,
        )
    return float(value)


def integrate_pieces(
    f: Callable[[float], float],
    breakpoints: list,
    tol: float,
    rel_tol: float = 0.0,
) -> float:
    """Integrate over consecutive subintervals [b0,b1], [b1,b2], ..."""
    total = 0.0
    for lo, hi in zip(breakpoints[:-1], breakpoints[1:]):
        if hi > lo:
            total += integrate_adaptive(f, lo, hi, tol, rel_tol)
    return total


def default_breakpoints(upper: float, cutoff: Optional[float] = None) -> list:
    """Breakpoints on [0, upper] that resolve the u*K0(u) peak near u ~ 1."""
    stop = upper if cutoff is None else min(upper, cutoff)
    points = [0.0] + [p for p in (0.5, 2.0, 8.0, 25.0) if p < stop] + [stop]
    return points
