"""Helper utility functions for unit conversion and formatting."""

from typing import Union

import numpy as np

from .constants import CSV_SIGNIFICANT_DIGITS

Number = Union[float, np.ndarray]


def db_to_linear(value_db: Number) -> Number:
    """Convert a decibel quantity to a linear ratio.

    Args:
        value_db: Value in dB

    Returns:
        Linear ratio 10^(dB/10)
    """
    result = np.power(10.0, np.asarray(value_db, dtype=float) / 10.0)
    return float(result) if result.ndim == 0 else result


def dbm_to_watts(value_dbm: float) -> float:
    """Convert a power in dBm to watts.

    Args:
        value_dbm: Power in dBm

    Returns:
        Power in watts
    """
    return 10.0 ** ((value_dbm - 30.0) / 10.0)


def format_significant(value: float, digits: int = CSV_SIGNIFICANT_DIGITS) -> str:
    """Format a number with a fixed count of significant digits.

    Args:
        value: Number to format
        digits: Significant digits

    Returns:
        Formatted string; NaN and infinities are written as nan/inf/-inf
    """
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), f".{digits}g")


def format_duration(seconds: float) -> str:
    """Format duration in seconds to human-readable string.

    Args:
        seconds: Duration in seconds

    Returns:
        Formatted string (e.g., "1m 30s", "2h 15m")
    """
    if seconds < 60:
        return f"{seconds:.1f}s"
    if seconds < 3600:
        minutes = int(seconds // 60)
        return f"{minutes}m {seconds % 60:.0f}s"
    hours = int(seconds // 3600)
    return f"{hours}h {int((seconds % 3600) // 60)}m"


def parse_position(text: str) -> tuple:
    """Parse an 'x,y' coordinate pair in meters."""
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != 2:
        raise ValueError(f"expected 'x,y', got {text!r}")
    return (float(parts[0]), float(parts[1]))
