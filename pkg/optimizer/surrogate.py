"""Lipschitz quadratic minorant of the double-reflection gain.

Gamma(v) = (v^H G_SB v)(v^H G_BR v) is bounded below around an anchor v0 by
the descent lemma

    Gamma(v) >= Gamma(v0) + Re{grad^H (v - v0)} - (L/2)||v - v0||^2,

with grad = 2 W v0 and W = G_SB v0 v0^H G_BR + G_BR v0 v0^H G_SB. On the
unit-modulus set the right-hand side is affine in the lifted V = [v;1][v;1]^H,
which is what makes each iteration a linear SDP.
"""

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from channel.propagation import lift
from logs.logger import get_logger
from utils.constants import MINORANT_CHECK_SAMPLES, SURROGATE_CHECK_SAMPLES, TWO_PI
from utils.exceptions import DomainError, SurrogateValidationError

logger = get_logger(__name__)

SURROGATE_REL_TOL = 1e-8
MINORANT_REL_TOL = 1e-9
MAX_LIPSCHITZ_DOUBLINGS = 200


def _quadratic(v: np.ndarray, g: np.ndarray) -> float:
    return float(np.real(np.conj(v) @ g @ v))


def gamma(v: np.ndarray, g_sb: np.ndarray, g_br: np.ndarray) -> float:
    """(v^H G_SB v)(v^H G_BR v)."""
    v = np.asarray(v, dtype=complex)
    return _quadratic(v, g_sb) * _quadratic(v, g_br)


def w_matrix(v0: np.ndarray, g_sb: np.ndarray, g_br: np.ndarray) -> np.ndarray:
    a = g_sb @ np.outer(v0, np.conj(v0)) @ g_br
    return a + a.conj().T


def gamma_gradient(v0: np.ndarray, g_sb: np.ndarray, g_br: np.ndarray) -> np.ndarray:
    """2 W v0, so that dGamma = Re{grad^H dv} to first order."""
    return 2.0 * w_matrix(v0, g_sb, g_br) @ v0


def random_unit_modulus(generator: np.random.Generator, num_elements: int, count: Optional[int] = None) -> np.ndarray:
    """Unit-modulus vectors with independent uniform phases."""
    shape = num_elements if count is None else (count, num_elements)
    return np.exp(1j * generator.uniform(0.0, TWO_PI, size=shape))


@dataclass(frozen=True)
class Surrogate:
    """Minorant (L/2) Tr(U V) + const of Gamma around an anchor."""

    v0: np.ndarray
    w: np.ndarray
    gradient: np.ndarray
    u: np.ndarray
    const: float
    lipschitz: float
    gamma0: float
    sign_corrected: bool = False

    @property
    def num_elements(self) -> int:
        return self.v0.size

    @property
    def objective_matrix(self) -> np.ndarray:
        """(L/2) U, the matrix whose trace against V gives the surrogate minus const."""
        return 0.5 * self.lipschitz * self.u

    def value_lifted(self, big_v: np.ndarray) -> float:
        return float(np.real(np.trace(self.objective_matrix @ big_v))) + self.const

    def value(self, v: np.ndarray) -> float:
        return self.value_lifted(lift(v))

    def lemma_value(self, v: np.ndarray) -> float:
        """Descent-lemma form evaluated directly."""
        d = np.asarray(v, dtype=complex) - self.v0
        return (
            self.gamma0
            + float(np.real(np.vdot(self.gradient, d)))
            - 0.5 * self.lipschitz * float(np.real(np.vdot(d, d)))
        )


def _trace_form(v0: np.ndarray, w: np.ndarray, lipschitz: float, sign: float):
    """U and const of the trace form; sign=+1 gives the printed block signs."""
    m = v0.size
    column = -(2.0 / lipschitz) * (w @ v0) - v0
    u = np.zeros((m + 1, m + 1), dtype=complex)
    u[:m, :m] = np.eye(m)
    u[:m, m] = column
    u[m, :m] = np.conj(column)
    return sign * u


def _scale(surrogate_gamma0: float, gradient: np.ndarray, lipschitz: float, m: int) -> float:
    return max(1.0, abs(surrogate_gamma0), float(np.linalg.norm(gradient)) * np.sqrt(m), lipschitz * m)


def _check_unit_modulus(v0: np.ndarray) -> None:
    if np.max(np.abs(np.abs(v0) - 1.0)) > 1e-9:
        raise DomainError("v0", "non-unit-modulus entries", "|v0_m| = 1")


def build_surrogate(
    v0: np.ndarray,
    g_sb: np.ndarray,
    g_br: np.ndarray,
    lipschitz: float,
    generator: Optional[np.random.Generator] = None,
    samples: int = SURROGATE_CHECK_SAMPLES,
) -> Surrogate:
    """Build the trace-form minorant at v0 and validate it against the lemma.

    The printed block signs of U are tried first; if they disagree with the
    descent-lemma form on random unit-modulus samples, U is rebuilt with the
    opposite sign and ``sign_corrected`` is set.

    Args:
        v0: Unit-modulus anchor
        g_sb: G_SB
        g_br: G_BR
        lipschitz: L > 0
        generator: Source of validation samples
        samples: Number of validation samples

    Returns:
        Surrogate

    Raises:
        DomainError: if v0 is not unit-modulus or L <= 0
        SurrogateValidationError: if neither sign reproduces the lemma form
    """
    v0 = np.asarray(v0, dtype=complex)
    _check_unit_modulus(v0)
    if not lipschitz > 0:
        raise DomainError("lipschitz", lipschitz, "L > 0")
    generator = generator or np.random.default_rng(0)

    m = v0.size
    gamma0 = gamma(v0, g_sb, g_br)
    w = w_matrix(v0, g_sb, g_br)
    gradient = 2.0 * w @ v0
    const = gamma0 - 2.0 * float(np.real(np.conj(v0) @ w @ v0)) - 0.5 * lipschitz * m
    checks = list(random_unit_modulus(generator, m, samples))
    tol = SURROGATE_REL_TOL * _scale(gamma0, gradient, lipschitz, m)

    worst = np.inf
    for sign, corrected in ((1.0, False), (-1.0, True)):
        surrogate = Surrogate(
            v0=v0, w=w, gradient=gradient, u=_trace_form(v0, w, lipschitz, sign),
            const=const, lipschitz=lipschitz, gamma0=gamma0, sign_corrected=corrected,
        )
        discrepancy = max(abs(surrogate.value(v) - surrogate.lemma_value(v)) for v in checks)
        if discrepancy <= tol:
            if corrected:
                logger.debug(f"Trace-form U rebuilt with flipped sign (printed form off by {worst:.3g})")
            return surrogate
        worst = discrepancy
    raise SurrogateValidationError(worst)


def is_minorant(
    surrogate: Surrogate,
    g_sb: np.ndarray,
    g_br: np.ndarray,
    points: Iterable[np.ndarray],
) -> bool:
    """True if the surrogate stays below Gamma at every point."""
    tol = MINORANT_REL_TOL * max(1.0, abs(surrogate.gamma0))
    return all(surrogate.lemma_value(v) <= gamma(v, g_sb, g_br) + tol for v in points)


def backtrack_lipschitz(
    v0: np.ndarray,
    g_sb: np.ndarray,
    g_br: np.ndarray,
    lipschitz: float,
    generator: np.random.Generator,
    samples: int = MINORANT_CHECK_SAMPLES,
    extra: Iterable[np.ndarray] = (),
) -> float:
    """Double L until the lemma form lies below Gamma on random and given points."""
    v0 = np.asarray(v0, dtype=complex)
    points = list(random_unit_modulus(generator, v0.size, samples)) + [np.asarray(x, dtype=complex) for x in extra]
    gamma0 = gamma(v0, g_sb, g_br)
    w = w_matrix(v0, g_sb, g_br)
    gradient = 2.0 * w @ v0
    for doublings in range(MAX_LIPSCHITZ_DOUBLINGS + 1):
        lemma = Surrogate(
            v0=v0, w=w, gradient=gradient, u=np.zeros((1, 1)), const=0.0,
            lipschitz=lipschitz, gamma0=gamma0,
        )
        if is_minorant(lemma, g_sb, g_br, points):
            if doublings:
                logger.debug(f"Lipschitz parameter doubled {doublings}x to {lipschitz:.4g}")
            return lipschitz
        lipschitz *= 2.0
    raise SurrogateValidationError(float("inf"))
