"""Configuration package: runtime settings and scenario parameters."""

from .scenario import InitStrategy, SicBoundForm, SystemConfig, load_scenario
from .settings import Settings, get_settings

__all__ = [
    "InitStrategy",
    "Settings",
    "SicBoundForm",
    "SystemConfig",
    "get_settings",
    "load_scenario",
]
