from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping, Optional, Sequence, Tuple

import numpy as np

from classes.constraint_report import ConstraintReport
from classes.eit_channel import ChannelPair
from classes.pulse_spec import PulseSpec
from classes.two_photon_state import TwoPhotonState
from lib.errors import InvalidParameter


class Experiment(str, Enum):
    PHASE_GATE = "phase_gate"
    QND = "qnd"
    POTENTIAL_CURVE = "potential_curve"
    SWEEP = "sweep"


@dataclass(frozen=True)
class ConstraintOptions:
    strict_margin: float = 10.0
    plain_margin: float = 1.0
    coherent_sigmas: float = 2.0
    signal_self_interaction: bool = True


@dataclass(frozen=True)
class PotentialRange:
    zeta_min: float = -6.0
    zeta_max: float = 6.0
    points: int = 601


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    start: float
    stop: float
    steps: int
    experiment: Experiment

    def __post_init__(self) -> None:
        if self.steps < 1:
            raise InvalidParameter(f"A sweep needs at least one step, got {self.steps!r}")
        if self.experiment not in (Experiment.PHASE_GATE, Experiment.QND):
            raise InvalidParameter(f"Sweeps run phase_gate or qnd, got {self.experiment.value!r}")

    def points(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass(frozen=True)
class Scenario:
    """A fully specified experiment, compiled from a flat key-value file.

    ``values`` keeps the parsed file so sweeps can clone it with one key replaced.
    """
    name: str
    experiment: Experiment
    values: Mapping[str, Any] = field(repr=False)
    pair: Optional[ChannelPair] = None
    pulse1: Optional[PulseSpec] = None
    pulse2: Optional[PulseSpec] = None
    n_max: Optional[int] = None
    potential: PotentialRange = PotentialRange()
    surface_points: Optional[int] = None
    sweep: Optional[SweepSpec] = None
    constraints: ConstraintOptions = ConstraintOptions()
    quad_tol: Optional[float] = None

    @property
    def has_medium(self) -> bool:
        return self.pair is not None


@dataclass(frozen=True)
class ResultTable:
    """Named table of plain values; every table carries a ``source`` column."""
    name: str
    columns: Tuple[str, ...]
    rows: Tuple[Tuple[Any, ...], ...]

    def column(self, name: str) -> Tuple[Any, ...]:
        i = self.columns.index(name)
        return tuple(r[i] for r in self.rows)

    def lookup(self, key: str, value_column: str = "value", key_column: str = "quantity") -> Any:
        """Value in ``value_column`` of the row whose ``key_column`` equals ``key``."""
        k, v = self.columns.index(key_column), self.columns.index(value_column)
        for row in self.rows:
            if row[k] == key:
                return row[v]
        raise KeyError(f"{key!r} not in table {self.name!r}")


@dataclass(frozen=True)
class RunResult:
    scenario_name: str
    experiment: Experiment
    report: Optional[ConstraintReport]
    tables: Tuple[ResultTable, ...]
    surface: Optional[TwoPhotonState] = None
    curve: Optional[Tuple[np.ndarray, np.ndarray]] = field(default=None, repr=False)

    def table(self, name: str) -> ResultTable:
        for t in self.tables:
            if t.name == name:
                return t
        raise KeyError(f"No table {name!r} in the result of {self.scenario_name!r}")


def table(name: str, columns: Sequence[str], rows) -> ResultTable:
    return ResultTable(name, tuple(columns), tuple(tuple(r) for r in rows))
