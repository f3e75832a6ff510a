"""Named sweeps reproducing the published figure set.

Every preset starts from the default scenario (B = 3, noise -80 dBm, Q = 5,
L = 2.5e-3, M = 10, P_max = 25 dBm, eps_SIC = 2, eps_c = 0.5).
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional, Tuple

import numpy as np

from config.scenario import SystemConfig
from experiments.models import ExperimentKind, ExperimentSpec, RunMode, SweepParameter, SweepSpec, WcsiMode
from utils.constants import DEFAULT_BASELINE_DRAWS, DEFAULT_TRIALS


@dataclass(frozen=True)
class Preset:
    """A figure preset: one or more experiments written to sibling CSV files."""

    name: str
    description: str
    runs: Tuple[ExperimentSpec, ...]

    def with_options(
        self,
        scenario: Optional[SystemConfig] = None,
        seed: Optional[int] = None,
        trials: Optional[int] = None,
        output_dir: Optional[Path] = None,
    ) -> "Preset":
        """Copy with a base scenario, seed, trial count or output directory applied to every run.

        Sweep-specific scenario fields of the preset are kept over ``scenario``.
        """
        runs = []
        for run in self.runs:
            updates = {}
            if scenario is not None:
                fixed = run.scenario.model_dump(exclude_defaults=True)
                updates["scenario"] = scenario.with_overrides(**fixed) if fixed else scenario
            if seed is not None:
                updates["seed"] = seed
            if trials is not None:
                updates["trials"] = trials
            if output_dir is not None:
                updates["output"] = Path(output_dir) / run.output.name
            runs.append(run.model_copy(update=updates))
        return Preset(self.name, self.description, tuple(runs))


def _values(start: float, stop: float, step: float) -> Tuple[float, ...]:
    return tuple(float(v) for v in np.round(np.arange(start, stop + step / 2, step), 10))


def _spec(name: str, kind: ExperimentKind, parameter: SweepParameter, values, **fields) -> ExperimentSpec:
    return ExperimentSpec(
        name=name,
        kind=kind,
        sweep=SweepSpec(parameter=parameter, values=values),
        output=Path(f"{name}.csv"),
        trials=fields.pop("trials", DEFAULT_TRIALS),
        baseline_draws=fields.pop("baseline_draws", DEFAULT_BASELINE_DRAWS),
        **fields,
    )


def _build_presets() -> Dict[str, Preset]:
    power_sweep = _values(0.0, 30.0, 2.0)
    optimized_power_sweep = _values(10.0, 30.0, 5.0)
    dense_irs = SystemConfig(num_elements=30)

    presets = [
        Preset(
            "fig3",
            "closed-form vs Monte Carlo DEP against P_max, alpha = 0.2, M = 30",
            (
                _spec("fig3_stat", ExperimentKind.DEP, SweepParameter.P_MAX_DBM, power_sweep,
                      scenario=dense_irs, alpha=0.2, wcsi=WcsiMode.STATISTICAL),
                _spec("fig3_none", ExperimentKind.DEP, SweepParameter.P_MAX_DBM, power_sweep,
                      scenario=dense_irs, alpha=0.2, wcsi=WcsiMode.NONE),
            ),
        ),
        Preset(
            "fig4",
            "convergence of the PSR and CSR optimizers at M = 10",
            (
                _spec("fig4", ExperimentKind.OPTIMIZE, SweepParameter.NUM_ELEMENTS, (10.0,),
                      mode=RunMode.BOTH, traces=True),
            ),
        ),
        Preset(
            "fig5",
            "optimized DEP against P_max",
            (
                _spec("fig5", ExperimentKind.OPTIMIZE, SweepParameter.P_MAX_DBM, optimized_power_sweep,
                      mode=RunMode.BOTH),
            ),
        ),
        Preset(
            "fig6",
            "optimized DEP against the SIC requirement",
            (
                _spec("fig6", ExperimentKind.OPTIMIZE, SweepParameter.EPS_SIC, (1.0, 1.5, 2.0, 2.5, 3.0),
                      mode=RunMode.BOTH),
            ),
        ),
        Preset(
            "fig7",
            "optimized DEP against the backscatter QoS requirement",
            (
                _spec("fig7", ExperimentKind.OPTIMIZE, SweepParameter.EPS_C, (0.25, 0.5, 0.75, 1.0),
                      mode=RunMode.BOTH),
            ),
        ),
        Preset(
            "fig8",
            "CSR optimized DEP against the symbol-period ratio",
            (
                _spec("fig8", ExperimentKind.OPTIMIZE, SweepParameter.ETA, (2.0, 5.0, 10.0, 15.0, 20.0),
                      mode=RunMode.CSR),
            ),
        ),
        Preset(
            "fig9",
            "optimized DEP against P_max for a warden with a frozen threshold",
            (
                _spec("fig9", ExperimentKind.OPTIMIZE, SweepParameter.P_MAX_DBM, optimized_power_sweep,
                      mode=RunMode.BOTH, wcsi=WcsiMode.NONE),
            ),
        ),
    ]
    return {preset.name: preset for preset in presets}


PRESETS: Dict[str, Preset] = _build_presets()


def get_preset(name: str) -> Preset:
    """Look up a preset by name (fig3..fig9)."""
    try:
        return PRESETS[name.lower()]
    except KeyError:
        raise KeyError(f"unknown preset '{name}', expected one of {sorted(PRESETS)}") from None
