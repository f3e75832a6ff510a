"""Experiment descriptions and tabular results."""

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from config.scenario import SystemConfig
from rates.capacity import Mode
from utils.constants import DEFAULT_BASELINE_DRAWS, DEFAULT_TRIALS


class ExperimentKind(str, Enum):
    """Which runner an experiment is dispatched to."""
    DEP = "dep"
    OPTIMIZE = "optimize"


class WcsiMode(str, Enum):
    """Warden channel knowledge on the legitimate side."""
    STATISTICAL = "stat"
    NONE = "none"


class RunMode(str, Enum):
    """Symbiotic-radio strategies evaluated by an optimization sweep."""
    PSR = "psr"
    CSR = "csr"
    BOTH = "both"

    def modes(self) -> Tuple[Mode, ...]:
        if self is RunMode.PSR:
            return (Mode.PSR,)
        if self is RunMode.CSR:
            return (Mode.CSR,)
        return (Mode.PSR, Mode.CSR)


class SweepParameter(str, Enum):
    """Parameters an experiment may sweep, with their CSV units."""
    P_MAX_DBM = "p_max_dbm"
    NUM_ELEMENTS = "num_elements"
    EPS_SIC = "eps_sic"
    EPS_C = "eps_c"
    ETA = "eta"
    ALPHA = "alpha"

    @property
    def unit(self) -> str:
        return _SWEEP_UNITS[self]


_SWEEP_UNITS = {
    SweepParameter.P_MAX_DBM: "dBm",
    SweepParameter.NUM_ELEMENTS: "",
    SweepParameter.EPS_SIC: "bit/s/Hz",
    SweepParameter.EPS_C: "bit/s/Hz",
    SweepParameter.ETA: "",
    SweepParameter.ALPHA: "",
}

_INTEGER_SWEEPS = {SweepParameter.NUM_ELEMENTS, SweepParameter.ETA}


class SweepSpec(BaseModel):
    """A single swept parameter and its values, in sweep order."""

    model_config = ConfigDict(frozen=True)

    parameter: SweepParameter
    values: Tuple[float, ...] = Field(..., min_length=1)

    @field_validator("values", mode="before")
    @classmethod
    def parse_values(cls, v: Any) -> Any:
        """Accept comma-separated strings such as '0,5,10'."""
        if isinstance(v, str):
            return tuple(float(part) for part in v.split(",") if part.strip())
        return v


class ExperimentSpec(BaseModel):
    """Everything that determines one sweep, and therefore every output byte.

    Attributes:
        name: Label used in logs and default file names
        kind: Runner to dispatch to
        scenario: Base scenario; the swept parameter overrides one field
        sweep: Swept parameter
        mode: Strategies for optimization sweeps
        wcsi: Statistical WCSI (optimal warden threshold) or none (fixed threshold)
        trials: Monte Carlo trials per point
        seed: 64-bit seed
        output: CSV path
        alpha: Reflection coefficient for DEP sweeps that do not sweep alpha
        tau: Frozen warden threshold for non-WCSI runs; tuned at P_max when omitted
        instances: Channel realizations per sweep point in optimization sweeps
        baseline_draws: Random-phase draws of the benchmark
        traces: Also collect per-iteration traces
    """

    model_config = ConfigDict(frozen=True)

    name: str = "experiment"
    kind: ExperimentKind = ExperimentKind.DEP
    scenario: SystemConfig = Field(default_factory=SystemConfig)
    sweep: SweepSpec
    mode: RunMode = RunMode.BOTH
    wcsi: WcsiMode = WcsiMode.STATISTICAL
    trials: int = Field(DEFAULT_TRIALS, ge=1)
    seed: int = Field(0, ge=0, lt=2**64)
    output: Optional[Path] = None
    alpha: float = Field(0.2, gt=0, le=1)
    tau: Optional[float] = Field(None, gt=0)
    instances: int = Field(1, ge=1)
    baseline_draws: int = Field(DEFAULT_BASELINE_DRAWS, ge=1)
    traces: bool = False

    def scenario_at(self, value: float) -> SystemConfig:
        """Base scenario with the swept field set to ``value``.

        dBm values are converted to watts here, at the experiment boundary.
        """
        parameter = self.sweep.parameter
        if parameter is SweepParameter.ALPHA:
            return self.scenario
        if parameter in _INTEGER_SWEEPS:
            return self.scenario.with_overrides(**{parameter.value: int(round(value))})
        return self.scenario.with_overrides(**{parameter.value: value})

    def alpha_at(self, value: float) -> float:
        return value if self.sweep.parameter is SweepParameter.ALPHA else self.alpha


@dataclass(frozen=True)
class Column:
    """A result column; the CSV header reads 'name [unit]'."""

    name: str
    unit: str = ""

    @property
    def header(self) -> str:
        return f"{self.name} [{self.unit}]" if self.unit else self.name


@dataclass
class ResultTable:
    """Rows of results with a fixed, ordered set of columns."""

    columns: Tuple[Column, ...]
    rows: List[Tuple[Any, ...]] = field(default_factory=list)

    @property
    def names(self) -> List[str]:
        return [column.name for column in self.columns]

    def add_row(self, values: Mapping[str, Any]) -> None:
        """Append a row given as a column-name mapping; missing columns are NaN."""
        unknown = set(values) - set(self.names)
        if unknown:
            raise KeyError(f"unknown columns: {sorted(unknown)}")
        self.rows.append(tuple(values.get(name, float("nan")) for name in self.names))

    def extend(self, rows: Iterable[Mapping[str, Any]]) -> None:
        for row in rows:
            self.add_row(row)

    def column(self, name: str) -> List[Any]:
        index = self.names.index(name)
        return [row[index] for row in self.rows]

    def records(self) -> List[Dict[str, Any]]:
        return [dict(zip(self.names, row)) for row in self.rows]

    def __len__(self) -> int:
        return len(self.rows)


def make_table(columns: Sequence[Tuple[str, str]]) -> ResultTable:
    """Empty table from (name, unit) pairs."""
    return ResultTable(columns=tuple(Column(name, unit) for name, unit in columns))
