"""Scenario configuration: the physical system and algorithm parameters."""

import math
import re
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple, Union

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from channel.models import PathLossModel
from logs.logger import get_logger
from utils.constants import (
    DEFAULT_BACKSCATTER_POSITION,
    DEFAULT_EPS_C,
    DEFAULT_EPS_SIC,
    DEFAULT_ETA,
    DEFAULT_IRS_POSITION,
    DEFAULT_LIPSCHITZ,
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_NOISE_POWER_DBM,
    DEFAULT_NUM_ELEMENTS,
    DEFAULT_P_MAX_DBM,
    DEFAULT_QUADRATURE_ORDER,
    DEFAULT_RECEIVER_POSITION,
    DEFAULT_RICIAN_FACTOR,
    DEFAULT_RX_GAIN_DBI,
    DEFAULT_SOLVER_TOL,
    DEFAULT_SOURCE_POSITION,
    DEFAULT_TOLERANCE,
    DEFAULT_TX_GAIN_DBI,
    DEFAULT_WARDEN_POSITION,
    PATH_LOSS_INTERCEPT_DB,
    PATH_LOSS_SLOPE_DB,
    RANK_ONE_TARGET,
    SROCR_INITIAL_STEP,
    SROCR_MIN_STEP,
)
from utils.exceptions import ScenarioConfigError
from utils.helpers import dbm_to_watts, parse_position

logger = get_logger(__name__)

Position = Tuple[float, float]


class SicBoundForm(str, Enum):
    """How the CSR low-regime SIC constraint is turned into an alpha bound."""
    EXACT = "exact"
    WORST_CASE = "worst_case"
    PUBLISHED = "published"


class InitStrategy(str, Enum):
    """Initial IRS phase profile for the successive approximation loops."""
    RANDOM = "random"
    ALIGN = "align"


class SystemConfig(BaseModel):
    """All scalar parameters of one scenario, in SI units (watts, meters)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    num_elements: int = Field(DEFAULT_NUM_ELEMENTS, ge=1, le=256, description="IRS elements M")

    source_position: Position = Field(DEFAULT_SOURCE_POSITION, description="S coordinates (m)")
    backscatter_position: Position = Field(DEFAULT_BACKSCATTER_POSITION, description="BD coordinates (m)")
    receiver_position: Position = Field(DEFAULT_RECEIVER_POSITION, description="R coordinates (m)")
    warden_position: Position = Field(DEFAULT_WARDEN_POSITION, description="W coordinates (m)")
    irs_position: Position = Field(DEFAULT_IRS_POSITION, description="IRS coordinates (m)")

    rician_factor: float = Field(DEFAULT_RICIAN_FACTOR, ge=0, description="Rician K-factor B")
    noise_power: float = Field(dbm_to_watts(DEFAULT_NOISE_POWER_DBM), gt=0, description="Noise power (W)")
    p_max: float = Field(dbm_to_watts(DEFAULT_P_MAX_DBM), gt=0, description="Maximum transmit power (W)")
    eta: int = Field(DEFAULT_ETA, ge=1, description="Backscatter/primary symbol period ratio")
    eps_sic: float = Field(DEFAULT_EPS_SIC, ge=0, description="SIC rate requirement (bit/s/Hz)")
    eps_c: float = Field(DEFAULT_EPS_C, ge=0, description="Backscatter QoS requirement (bit/s/Hz)")

    quadrature_order: int = Field(DEFAULT_QUADRATURE_ORDER, ge=1, description="Gauss-Chebyshev order Q")
    lipschitz: float = Field(DEFAULT_LIPSCHITZ, gt=0, description="Initial Lipschitz parameter L")
    tol: float = Field(DEFAULT_TOLERANCE, gt=0, description="Convergence threshold delta")
    max_iterations: int = Field(DEFAULT_MAX_ITERATIONS, ge=1, description="Outer iteration cap")
    solver_tol: float = Field(DEFAULT_SOLVER_TOL, gt=0, description="SDP duality-gap tolerance")
    srocr_initial_step: float = Field(SROCR_INITIAL_STEP, gt=0, le=1)
    srocr_min_step: float = Field(SROCR_MIN_STEP, gt=0)
    rank_target: float = Field(RANK_ONE_TARGET, gt=0.5, le=1)

    tx_gain_dbi: float = Field(DEFAULT_TX_GAIN_DBI, description="G_t (dBi)")
    rx_gain_dbi: float = Field(DEFAULT_RX_GAIN_DBI, description="G_r (dBi)")
    path_loss_intercept_db: float = Field(PATH_LOSS_INTERCEPT_DB)
    path_loss_slope_db: float = Field(PATH_LOSS_SLOPE_DB, gt=0)

    sic_bound_form: SicBoundForm = Field(SicBoundForm.EXACT)
    init_strategy: InitStrategy = Field(InitStrategy.RANDOM)

    @field_validator(
        "source_position", "backscatter_position", "receiver_position",
        "warden_position", "irs_position", mode="before",
    )
    @classmethod
    def validate_position(cls, v: Any) -> Any:
        """Accept 'x,y' strings as well as pairs."""
        if isinstance(v, str):
            return parse_position(v)
        return v

    @model_validator(mode="after")
    def validate_geometry(self) -> "SystemConfig":
        """Every terminal must be at a positive distance from the IRS."""
        for name in ("source", "backscatter", "receiver", "warden"):
            if self._distance(getattr(self, f"{name}_position")) <= 0:
                raise ValueError(f"{name}_position coincides with the IRS")
        if self.srocr_min_step > self.srocr_initial_step:
            raise ValueError("srocr_min_step must not exceed srocr_initial_step")
        return self

    def _distance(self, position: Position) -> float:
        return math.hypot(position[0] - self.irs_position[0], position[1] - self.irs_position[1])

    @property
    def lam(self) -> float:
        """lambda = 1/M."""
        return 1.0 / self.num_elements

    @property
    def gamma_c(self) -> float:
        return 2.0 ** self.eps_c - 1.0

    @property
    def gamma_sic(self) -> float:
        return 2.0 ** self.eps_sic - 1.0

    @property
    def distances(self) -> Tuple[float, float, float, float]:
        """IRS link distances (d_S, d_B, d_R, d_W) in meters."""
        return (
            self._distance(self.source_position),
            self._distance(self.backscatter_position),
            self._distance(self.receiver_position),
            self._distance(self.warden_position),
        )

    @property
    def path_loss_model(self) -> PathLossModel:
        return PathLossModel(
            intercept_db=self.path_loss_intercept_db,
            slope_db=self.path_loss_slope_db,
            tx_gain_dbi=self.tx_gain_dbi,
            rx_gain_dbi=self.rx_gain_dbi,
        )

    def with_overrides(self, **updates: Any) -> "SystemConfig":
        """Return a validated copy with some fields replaced."""
        return SystemConfig.model_validate({**self.model_dump(), **normalize_keys(updates)})


# Keys accepted in scenario files besides the field names, converted to SI.
_DBM_KEYS = {"p_max_dbm": "p_max", "noise_power_dbm": "noise_power"}
_ALIASES = {"m": "num_elements", "b": "rician_factor", "q": "quadrature_order", "delta": "tol"}


def normalize_keys(values: Mapping[str, Any]) -> Dict[str, Any]:
    """Map file keys (case-insensitive, dBm variants, short aliases) to SystemConfig fields."""
    normalized: Dict[str, Any] = {}
    for raw_key, value in values.items():
        key = raw_key.strip().lower()
        key = _ALIASES.get(key, key)
        if key in _DBM_KEYS:
            normalized[_DBM_KEYS[key]] = dbm_to_watts(float(value))
        else:
            normalized[key] = value
    return normalized


def scenario_keys() -> Dict[str, str]:
    """Documented schema: every accepted key with its description."""
    keys = {name: field.description or "" for name, field in SystemConfig.model_fields.items()}
    keys.update({"p_max_dbm": "Maximum transmit power (dBm)", "noise_power_dbm": "Noise power (dBm)"})
    return keys


def _line_numbers(path: Path) -> Dict[str, int]:
    lines: Dict[str, int] = {}
    pattern = re.compile(r"^\s*(?:export\s+)?([A-Za-z_][A-Za-z0-9_]*)\s*=")
    for number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        match = pattern.match(line)
        if match:
            lines[match.group(1).lower()] = number
    return lines


def load_scenario(path: Union[str, Path], base: Optional[SystemConfig] = None) -> SystemConfig:
    """Load a key/value scenario file on top of a base configuration.

    Args:
        path: Scenario file in dotenv format
        base: Configuration supplying unspecified fields (defaults to SystemConfig())

    Returns:
        Validated SystemConfig

    Raises:
        ScenarioConfigError: unreadable file, unknown key or invalid value
    """
    path = Path(path)
    if not path.is_file():
        raise ScenarioConfigError("scenario file not found", path=str(path))

    raw = dotenv_values(path)
    lines = _line_numbers(path)
    base = base or SystemConfig()

    known = set(SystemConfig.model_fields) | set(_DBM_KEYS) | set(_ALIASES)
    for key, value in raw.items():
        if key.lower() not in known:
            raise ScenarioConfigError(f"unknown key '{key}'", path=str(path), line=lines.get(key.lower()), key=key)
        if value is None or value == "":
            raise ScenarioConfigError(f"missing value for '{key}'", path=str(path), line=lines.get(key.lower()), key=key)

    try:
        updates = normalize_keys(raw)
    except ValueError as e:
        raise ScenarioConfigError(f"invalid dBm value: {e}", path=str(path)) from e

    try:
        config = SystemConfig.model_validate({**base.model_dump(), **updates})
    except ValidationError as e:
        first = e.errors()[0]
        field = str(first["loc"][0]) if first["loc"] else None
        line = None
        if field is not None:
            reverse = {v: k for k, v in {**_DBM_KEYS, **_ALIASES}.items()}
            line = lines.get(field) or lines.get(reverse.get(field, ""))
        raise ScenarioConfigError(f"{field}: {first['msg']}", path=str(path), line=line, key=field) from e

    logger.debug(f"Loaded scenario {path} ({len(raw)} keys)")
    return config
