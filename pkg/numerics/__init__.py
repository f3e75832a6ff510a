"""Special functions, quadrature, root finding and random streams."""

from .quadrature import QuadratureRule, chebyshev_nodes, integrate_adaptive
from .rng import RngStream
from .roots import find_root_bracketed
from .special import bessel_k0, bessel_k1

__all__ = [
    "QuadratureRule",
    "RngStream",
    "bessel_k0",
    "bessel_k1",
    "chebyshev_nodes",
    "find_root_bracketed",
    "integrate_adaptive",
]
