"""Optimal detection thresholds of the warden."""

import math

from scipy import special

from logs.logger import get_logger
from numerics.quadrature import default_breakpoints, integrate_pieces
from numerics.roots import find_root_bracketed
from numerics.special import x_k1
from utils.exceptions import BracketError, DomainError

logger = get_logger(__name__)

RESIDUAL_REL_TOL = 1e-10
RESIDUAL_ROOT_TOL = 1e-8
MAX_BRACKET_EXPANSIONS = 100
# expm1(t) and exp(t) agree to double precision beyond this exponent
_EXPM1_SWITCH = 50.0


def _growth_integral(upper: float, c: float) -> float:
    """I(U) = int_0^U (exp(c u^2) - 1) u K0(u) du."""
    if upper <= 0.0:
        return 0.0

    def integrand(u: float) -> float:
        t = c * u * u
        scaled = u * special.k0e(u)
        if t <= _EXPM1_SWITCH:
            return math.expm1(t) * scaled * math.exp(-u)
        return scaled * math.exp(min(t - u, 700.0))

    return integrate_pieces(integrand, default_breakpoints(upper), 1e-300, RESIDUAL_REL_TOL)


def _normalized_residual(upper: float, c: float) -> float:
    """(I - U K1(U)) / (I + U K1(U)): -1 at U = 0, increasing towards +1."""
    growth = _growth_integral(upper, c)
    tail = x_k1(upper)
    return (growth - tail) / (growth + tail)


def _check_positive(**values: float) -> None:
    for name, value in values.items():
        if not value > 0:
            raise DomainError(name, value, f"{name} > 0")


def threshold_residual(
    tau: float,
    p: float,
    alpha: float,
    lam: float,
    l1: float,
    l2: float,
    sigma2: float,
) -> float:
    """int_0^{l2 z/alpha} exp(l1 alpha lam x / l2) K0(2 lam sqrt(x)) dx - 1/(2 lam^2).

    Evaluated as (I(U) - U K1(U)) / (2 lam^2) with U = 2 lam sqrt(l2 z/alpha),
    which is the same quantity without the cancellation of two large terms.
    """
    _check_positive(p=p, alpha=alpha, lam=lam, l1=l1, l2=l2)
    z = max(tau - sigma2, 0.0) / p
    upper = 2.0 * lam * math.sqrt(l2 * z / alpha)
    c = alpha * l1 / (4.0 * lam * l2)
    return (_growth_integral(upper, c) - x_k1(upper)) / (2.0 * lam * lam)


def optimal_threshold(
    p: float,
    alpha: float,
    lam: float,
    l1: float,
    l2: float,
    sigma2: float,
    tol: float = RESIDUAL_ROOT_TOL,
) -> float:
    """Threshold minimizing the average DEP for known statistics.

    Args:
        p: Transmit power (W)
        alpha: Backscatter reflection coefficient
        lam: 1/M
        l1: L(d_S) L(d_W)
        l2: l1 L(d_B)^2
        sigma2: Noise power (W)
        tol: Tolerance on the normalized residual

    Returns:
        tau* > sigma2 in watts

    Raises:
        DomainError: if p, alpha or a loss is not positive
        BracketError: if no sign change is found after repeated expansion
    """
    _check_positive(p=p, alpha=alpha, lam=lam, l1=l1, l2=l2, sigma2=sigma2)
    c = alpha * l1 / (4.0 * lam * l2)

    def residual(upper: float) -> float:
        return _normalized_residual(upper, c)

    # tau = sigma2 + 50 p M / l1 mapped to the U axis
    hi = 2.0 * lam * math.sqrt(50.0 * l2 / (lam * l1 * alpha))
    f_hi = residual(hi)
    expansions = 0
    while f_hi <= 0.0:
        expansions += 1
        if expansions > MAX_BRACKET_EXPANSIONS:
            raise BracketError(0.0, hi, -1.0, f_hi)
        hi *= 2.0
        f_hi = residual(hi)
    if expansions:
        logger.debug(f"Threshold bracket expanded {expansions}x to U={hi:.4g}")

    upper = find_root_bracketed(residual, 0.0, hi, tol)
    tau = sigma2 + p * alpha * upper * upper / (4.0 * lam * lam * l2)
    logger.debug(f"tau*={tau:.6g} W (U={upper:.6g}, alpha={alpha:.4g}, p={p:.4g})")
    return tau


def optimal_threshold_ratio_form(
    omega: float,
    p: float,
    alpha: float,
    lam: float,
    l1: float,
    sigma2: float,
) -> float:
    """tau* = p (1 + a w) ln(1 + a w) / (lam l1 a w) + sigma2 with a w = alpha*omega."""
    if not omega > 0:
        raise DomainError("omega", omega, "omega > 0")
    _check_positive(p=p, alpha=alpha, lam=lam, l1=l1)
    x = alpha * omega
    return p * (1.0 + x) * math.log1p(x) / (x * lam * l1) + sigma2
