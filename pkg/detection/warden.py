"""Received power, false-alarm and miss-detection probabilities at the warden.

The miss-detection integral over x in [0, l2 z/alpha] is evaluated after the
substitution u = 2 lam sqrt(x), which turns 2 lam^2 K0(2 lam sqrt(x)) dx into
u K0(u) du and removes the logarithmic endpoint singularity:

    P_MD = int_0^U (1 - exp(-a (1 - (u/U)^2))) u K0(u) du,
    U = 2 lam sqrt(l2 z / alpha),  a = lam l1 z.
"""

import math

import numpy as np
from scipy import special

from channel.models import CascadeGains
from detection.models import DepMethod, DepReport, DetectionParams, Hypothesis, MissDetectionMode
from logs.logger import get_logger
from numerics.quadrature import chebyshev_nodes, default_breakpoints, integrate_pieces
from numerics.special import x_k1
from utils.constants import BESSEL_TAIL_CUTOFF, INTEGRAL_TOL, QUADRATURE_AGREEMENT_TOL
from utils.exceptions import DomainError

logger = get_logger(__name__)


def received_power(
    hypothesis: Hypothesis,
    p: float,
    alpha: float,
    gains: CascadeGains,
    sigma2: float,
) -> float:
    """Average received power at the warden under a hypothesis."""
    power = p * abs(gains.h_sw) ** 2 + sigma2
    if hypothesis is Hypothesis.H1:
        power += alpha * p * gains.warden_backscatter_gain
    return power


def prob_false_alarm(params: DetectionParams) -> float:
    """P_FA = exp(-lam l1 z) for tau > sigma2, else 1."""
    if params.tau <= params.sigma2:
        return 1.0
    return math.exp(-params.direct_exponent)


def _u_k0(u: float) -> float:
    return u * special.k0e(u) * math.exp(-u)


def _miss_detection_integral(upper: float, exponent: float) -> float:
    def integrand(u: float) -> float:
        return -math.expm1(-exponent * (1.0 - (u / upper) ** 2)) * _u_k0(u)

    # u K0(u) is below 1e-24 past the cutoff, so the tail is dropped.
    points = default_breakpoints(upper, cutoff=BESSEL_TAIL_CUTOFF)
    return integrate_pieces(integrand, points, INTEGRAL_TOL)


def _miss_detection_quadrature(upper: float, exponent: float, order: int) -> float:
    rule = chebyshev_nodes(order)

    def g(x: np.ndarray) -> np.ndarray:
        arg = upper * np.sqrt((x + 1.0) / 2.0)
        return np.exp(exponent * (x - 1.0) / 2.0) * special.k0(arg)

    return 1.0 - x_k1(upper) - upper ** 2 / 4.0 * rule.integrate(g)


def prob_miss_detection(
    params: DetectionParams,
    mode: MissDetectionMode = MissDetectionMode.INTEGRAL,
    order: int = 5,
) -> float:
    """Miss-detection probability, exact or by Q-point Gauss-Chebyshev.

    Args:
        params: Detection parameters
        mode: INTEGRAL (adaptive) or QUADRATURE
        order: Q for the quadrature form

    Returns:
        P_MD; 0 when tau <= sigma2. The quadrature value is not clipped.
    """
    if params.tau <= params.sigma2:
        return 0.0
    upper = params.upper_limit
    if upper == 0.0:
        return 0.0
    if mode is MissDetectionMode.QUADRATURE:
        if order < 1:
            raise DomainError("order", order, "Q >= 1")
        return _miss_detection_quadrature(upper, params.direct_exponent, order)
    return _miss_detection_integral(upper, params.direct_exponent)


def _clip_probability(value: float, what: str) -> float:
    if value < 0.0 or value > 1.0:
        logger.debug(f"{what}={value:.3g} outside [0, 1]; clipped")
    return min(1.0, max(0.0, value))


def avg_dep_closed_form(
    params: DetectionParams,
    order: int = 5,
    mode: MissDetectionMode = MissDetectionMode.AUTO,
) -> DepReport:
    """Average detection error probability xi = P_FA + P_MD.

    In AUTO mode the Q-point rule is used when it agrees with a 2Q-point rule
    to within 1e-3; otherwise the adaptive integral is evaluated. The report's
    method records which form produced the value.
    """
    if params.tau <= params.sigma2:
        return DepReport(p_fa=1.0, p_md=0.0, xi=1.0, method=DepMethod.CLOSED_FORM)

    p_fa = prob_false_alarm(params)
    method = DepMethod.CLOSED_FORM
    if mode is MissDetectionMode.INTEGRAL:
        p_md = prob_miss_detection(params, MissDetectionMode.INTEGRAL)
    else:
        p_md = prob_miss_detection(params, MissDetectionMode.QUADRATURE, order)
        method = DepMethod.QUADRATURE
        if mode is MissDetectionMode.AUTO:
            refined = prob_miss_detection(params, MissDetectionMode.QUADRATURE, 2 * order)
            if abs(refined - p_md) > QUADRATURE_AGREEMENT_TOL:
                logger.debug(
                    f"Q={order} rule unresolved (U={params.upper_limit:.3g}, "
                    f"diff {abs(refined - p_md):.2e}); using adaptive integral"
                )
                p_md = prob_miss_detection(params, MissDetectionMode.INTEGRAL)
                method = DepMethod.CLOSED_FORM

    p_fa = _clip_probability(p_fa, "P_FA")
    p_md = _clip_probability(p_md, "P_MD")
    return DepReport(
        p_fa=p_fa,
        p_md=p_md,
        xi=p_fa + p_md,
        method=method,
        quadrature_order=order if method is DepMethod.QUADRATURE else None,
    )
