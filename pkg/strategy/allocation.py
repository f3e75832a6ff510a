"""Reflection coefficient and transmit power selection.

CSR bounds are computed in SNR units: s = p|h_SR|^2/sigma2 is the primary
SNR and b = alpha * g with g = p|h_SB h_BR|^2/sigma2 is the backscatter SNR.
"""

import math
from typing import TYPE_CHECKING, Callable, Optional, Sequence

from channel.models import CascadeGains
from channel.propagation import link_losses
from config.scenario import SicBoundForm
from logs.logger import get_logger
from rates.capacity import Mode
from strategy.models import AlphaRegion, Regime, SicBoundComparison
from utils.exceptions import DomainError, InfeasibleInstanceError

if TYPE_CHECKING:
    from config.scenario import SystemConfig

logger = get_logger(__name__)


def _require_positive_power(p: float) -> None:
    if not p > 0:
        raise DomainError("p", p, "p > 0")


def _safe_ratio(numerator: float, denominator: float) -> float:
    if denominator <= 0.0:
        return math.inf if numerator > 0 else 0.0
    return numerator / denominator


def alpha_region_psr(
    p: float,
    gains: CascadeGains,
    sigma2: float,
    gamma_c: float,
    gamma_sic: float,
) -> AlphaRegion:
    """Feasible alpha interval of the parasitic strategy.

    The QoS constraint bounds alpha from below and the SIC constraint (the
    backscatter signal is interference when decoding s) bounds it from above.
    """
    _require_positive_power(p)
    backscatter = p * gains.backscatter_gain
    lower = _safe_ratio(gamma_c * sigma2, backscatter)
    if gamma_sic <= 0.0:
        upper = math.inf
    else:
        upper = _safe_ratio(p * abs(gains.h_sr) ** 2 - sigma2 * gamma_sic, gamma_sic * backscatter)
    return AlphaRegion.from_bounds(lower, upper)


def snr_regime(p: float, h_sr: complex, sigma2: float, gamma_sic: float) -> Regime:
    """HIGH iff p|h_SR|^2/sigma2 >= (gamma_sic + 1)/4."""
    snr = p * abs(h_sr) ** 2 / sigma2
    return Regime.HIGH if snr >= (gamma_sic + 1.0) / 4.0 else Regime.LOW


def qos_alpha_csr(p: float, gains: CascadeGains, sigma2: float, eta: int, eps_c: float) -> float:
    """(2^(eta eps_c) - 1) sigma2 / (p eta |h_SB h_BR|^2)."""
    _require_positive_power(p)
    return _safe_ratio((2.0 ** (eta * eps_c) - 1.0) * sigma2, p * eta * gains.backscatter_gain)


def _smallest_outside_roots(b_min: float, linear: float, constant: float) -> float:
    """Smallest b >= b_min with b^2 + 2 linear b + constant >= 0."""
    disc = linear * linear - constant
    if disc <= 0.0:
        return b_min
    root = math.sqrt(disc)
    b_low, b_high = -linear - root, -linear + root
    if b_min <= b_low or b_min >= b_high:
        return b_min
    return b_high


def _cross_term_cos2(gains: CascadeGains) -> float:
    reflected = gains.h_sb * gains.h_br
    if gains.h_sr == 0 or reflected == 0:
        return 0.0
    cos = (gains.h_sr * reflected.conjugate()).real / (abs(gains.h_sr) * abs(reflected))
    return min(1.0, cos * cos)


def _sic_alpha(
    p: float,
    gains: CascadeGains,
    sigma2: float,
    gamma_sic: float,
    qos_alpha: float,
    form: SicBoundForm,
) -> float:
    s = p * abs(gains.h_sr) ** 2 / sigma2
    g = p * gains.backscatter_gain / sigma2
    if g <= 0.0:
        return math.inf

    if form is SicBoundForm.PUBLISHED:
        radicand = 1.0 + gamma_sic - 4.0 * s
        if radicand < 0.0:
            return qos_alpha
        return max(qos_alpha, (math.sqrt(radicand) - 1.0 + 3.0 * s) / g)

    # (1 + s + b)^2 - 4 s b cos^2 >= (1 + gamma)^2, quadratic in b
    cos2 = 1.0 if form is SicBoundForm.WORST_CASE else _cross_term_cos2(gains)
    linear = 1.0 + s - 2.0 * s * cos2
    constant = (1.0 + s) ** 2 - (1.0 + gamma_sic) ** 2
    b = _smallest_outside_roots(qos_alpha * g, linear, constant)
    return b / g


def alpha_lower_csr(
    p: float,
    gains: CascadeGains,
    sigma2: float,
    gamma_sic: float,
    eta: int,
    eps_c: float,
    regime: Regime,
    form: SicBoundForm = SicBoundForm.EXACT,
) -> float:
    """Smallest alpha meeting the CSR QoS and SIC constraints.

    Args:
        p: Transmit power (W)
        gains: Cascade gains for the current phase profile
        sigma2: Noise power (W)
        gamma_sic: 2^eps_sic - 1
        eta: Symbol period ratio
        eps_c: Backscatter rate requirement
        regime: SNR regime; the SIC constraint is not binding in the high regime
        form: SIC treatment in the low regime

    Returns:
        The bound; values above 1 (or inf) mean no feasible alpha
    """
    qos = qos_alpha_csr(p, gains, sigma2, eta, eps_c)
    if regime is Regime.HIGH:
        return qos
    return _sic_alpha(p, gains, sigma2, gamma_sic, qos, form)


def enforce_exact_sic(p: float, gains: CascadeGains, sigma2: float, gamma_sic: float, alpha: float) -> float:
    """Smallest alpha' >= alpha whose two-branch CSR primary rate meets the SIC requirement.

    The high-regime bound is QoS only, and the SIC condition there holds for
    every alpha only once s >= (1 + gamma_sic)^2 / 4. For (1 + gamma_sic)/4 <= s
    below that, the QoS bound can leave the primary rate short.
    """
    if not math.isfinite(alpha):
        return alpha
    return _sic_alpha(p, gains, sigma2, gamma_sic, alpha, SicBoundForm.EXACT)


def alpha_region_csr(
    p: float,
    gains: CascadeGains,
    sigma2: float,
    gamma_sic: float,
    eta: int,
    eps_c: float,
    form: SicBoundForm = SicBoundForm.EXACT,
) -> AlphaRegion:
    """CSR region [lower, 1]; the regime is classified from the gains.

    The lower end always satisfies the exact SIC condition, whatever the
    regime and bound form.
    """
    regime = snr_regime(p, gains.h_sr, sigma2, gamma_sic)
    lower = alpha_lower_csr(p, gains, sigma2, gamma_sic, eta, eps_c, regime, form)
    return AlphaRegion.from_bounds(enforce_exact_sic(p, gains, sigma2, gamma_sic, lower), 1.0)


def compare_sic_bounds(
    p: float,
    gains: CascadeGains,
    sigma2: float,
    gamma_sic: float,
    eta: int,
    eps_c: float,
) -> SicBoundComparison:
    """CSR lower bound under every SIC treatment at the classified regime."""
    regime = snr_regime(p, gains.h_sr, sigma2, gamma_sic)
    bounds = {
        form.value: alpha_lower_csr(p, gains, sigma2, gamma_sic, eta, eps_c, regime, form)
        for form in SicBoundForm
    }
    return SicBoundComparison(regime=regime, qos=qos_alpha_csr(p, gains, sigma2, eta, eps_c), **bounds)


def _check_fixed_tau(tau: float, omega: float, alpha: float, lam: float, l1: float, sigma2: float) -> float:
    if not tau > sigma2:
        raise DomainError("tau", tau, "tau > sigma2")
    if not omega > 0:
        raise DomainError("omega", omega, "omega > 0")
    if not (alpha > 0 and lam > 0 and l1 > 0):
        raise DomainError("alpha, lam, l1", (alpha, lam, l1), "all > 0")
    return lam * l1 * (tau - sigma2)


def dep_fixed_threshold(
    p: float,
    tau: float,
    omega: float,
    alpha: float,
    lam: float,
    l1: float,
    sigma2: float,
) -> float:
    """xi(p) = 1 - exp(-k/(p(1+alpha w))) + exp(-k/p) with k = lam l1 (tau - sigma2)."""
    _require_positive_power(p)
    k = _check_fixed_tau(tau, omega, alpha, lam, l1, sigma2)
    return -math.expm1(-k / (p * (1.0 + alpha * omega))) + math.exp(-k / p)


def interior_power_minimizer(
    tau: float,
    omega: float,
    alpha: float,
    lam: float,
    l1: float,
    sigma2: float,
) -> float:
    """Stationary point of dep_fixed_threshold in p.

    Setting the derivative to zero gives ln(1 + x) = (k/p) x/(1 + x), so
    p* = k x / ((1 + x) ln(1 + x)) with x = alpha * omega; p* -> k as x -> 0.

    The published expression divides this by alpha. That version does not
    zero the derivative: alpha enters only through x, and the stationarity
    condition above has no further alpha factor. Dividing by alpha would also
    send p* to infinity as alpha -> 0 instead of to k. The tests check
    stationarity numerically.
    """
    k = _check_fixed_tau(tau, omega, alpha, lam, l1, sigma2)
    x = alpha * omega
    return k * x / ((1.0 + x) * math.log1p(x))


def optimal_power_fixed_tau(
    tau: float,
    omega: float,
    alpha: float,
    lam: float,
    l1: float,
    sigma2: float,
    p_min_f: float,
    p_max: float,
) -> float:
    """Transmit power maximizing the warden's error for a frozen threshold.

    xi(p) has a single interior minimum, so its maximum over [p_min_f, p_max]
    sits at one of the two ends.

    Raises:
        DomainError: unless sigma2 < tau, 0 < p_min_f < p_max and omega > 0
    """
    _check_fixed_tau(tau, omega, alpha, lam, l1, sigma2)
    if not 0.0 < p_min_f < p_max:
        raise DomainError("power range", (p_min_f, p_max), "0 < p_min_f < p_max")
    p_star = interior_power_minimizer(tau, omega, alpha, lam, l1, sigma2)
    xi_low = dep_fixed_threshold(p_min_f, tau, omega, alpha, lam, l1, sigma2)
    xi_high = dep_fixed_threshold(p_max, tau, omega, alpha, lam, l1, sigma2)
    choice = p_min_f if xi_low > xi_high else p_max
    logger.debug(
        f"Fixed-tau power: p*={p_star:.4g}, xi({p_min_f:.4g})={xi_low:.6f}, "
        f"xi({p_max:.4g})={xi_high:.6f} -> p={choice:.4g}"
    )
    return choice


def expected_omega(config: "SystemConfig", losses: Optional[Sequence[float]] = None) -> float:
    """M / L(d_B)^2: mean double-reflection over mean direct power at the warden."""
    if losses is None:
        losses = link_losses(config)
    return config.num_elements / losses[1] ** 2


def min_feasible_power(
    predicate: Callable[[float], bool],
    p_max: float,
    rel_tol: float = 1e-9,
    max_iter: int = 200,
) -> float:
    """Smallest power in (0, p_max] accepted by a monotone feasibility predicate.

    Bisection runs on a logarithmic scale between p_max * 1e-15 and p_max.

    Raises:
        InfeasibleInstanceError: if p_max itself is infeasible
    """
    if not p_max > 0:
        raise DomainError("p_max", p_max, "p_max > 0")
    if not predicate(p_max):
        raise InfeasibleInstanceError("rate constraints unmet at p_max")
    lo, hi = p_max * 1e-15, p_max
    if predicate(lo):
        return lo
    for _ in range(max_iter):
        if hi / lo <= 1.0 + rel_tol:
            break
        mid = math.sqrt(lo * hi)
        if predicate(mid):
            hi = mid
        else:
            lo = mid
    return hi


def feasibility_predicate(
    mode: Mode,
    gains: CascadeGains,
    config: "SystemConfig",
) -> Callable[[float], bool]:
    """p -> whether some alpha in (0, 1] meets the rate constraints at power p."""
    sigma2 = config.noise_power

    def psr(p: float) -> bool:
        return alpha_region_psr(p, gains, sigma2, config.gamma_c, config.gamma_sic).feasible

    def csr(p: float) -> bool:
        region = alpha_region_csr(
            p, gains, sigma2, config.gamma_sic, config.eta, config.eps_c, config.sic_bound_form
        )
        return region.feasible

    return psr if mode is Mode.PSR else csr
