"""Modified Bessel functions of the second kind, orders zero and one."""

from typing import Union

import numpy as np
from scipy import special

from utils.exceptions import DomainError

ArrayLike = Union[float, np.ndarray]


def _validated(x: ArrayLike, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    invalid = ~(arr > 0)
    if np.any(invalid):
        raise DomainError(name, float(arr[invalid].flat[0]), "x > 0")
    return arr


def _scalar_or_array(result: np.ndarray) -> ArrayLike:
    return float(result) if result.ndim == 0 else result


def bessel_k0(x: ArrayLike) -> ArrayLike:
    """K0(x) for x > 0.

    Args:
        x: Positive argument (scalar or array)

    Returns:
        K0(x); underflows to 0 for x beyond ~700

    Raises:
        DomainError: if any x <= 0 or is NaN
    """
    return _scalar_or_array(special.k0(_validated(x, "x")))


def bessel_k1(x: ArrayLike) -> ArrayLike:
    """K1(x) for x > 0; see bessel_k0."""
    return _scalar_or_array(special.k1(_validated(x, "x")))


def scaled_k0(x: ArrayLike) -> ArrayLike:
    """exp(x)*K0(x), finite for large x."""
    return _scalar_or_array(special.k0e(_validated(x, "x")))


def scaled_k1(x: ArrayLike) -> ArrayLike:
    """exp(x)*K1(x), finite for large x."""
    return _scalar_or_array(special.k1e(_validated(x, "x")))


def x_k1(x: float) -> float:
    """x*K1(x) with its limit 1 at x = 0."""
    if x == 0.0:
        return 1.0
    if x > 700.0:
        return 0.0
    return float(x * special.k1(_validated(x, "x")))
