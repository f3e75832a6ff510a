"""Utility modules: constants, unit helpers and the exception hierarchy."""

from .exceptions import (
    CovertRadioError,
    DomainError,
    InfeasibleInstanceError,
    OutputError,
    ScenarioConfigError,
)
from .helpers import dbm_to_watts

__all__ = [
    "CovertRadioError",
    "DomainError",
    "InfeasibleInstanceError",
    "OutputError",
    "ScenarioConfigError",
    "dbm_to_watts",
]
