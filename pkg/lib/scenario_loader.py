"""
Flat JSON scenario files: every key names one physical input with its unit.

    {"name": "paper_qnd", "experiment": "qnd", "waveguide.length_cm": 1.0, ...}

Unknown keys and wrongly typed values are errors; nothing is silently defaulted
except what ``_DEFAULTS`` lists.
"""
from __future__ import annotations

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from classes.eit_channel import ChannelPair, EitChannel, Transition
from classes.pulse_spec import Coherent, Fock, PhotonContent, PulseSpec
from classes.rydberg_state import RydbergState
from classes.scenario import ConstraintOptions, Experiment, PotentialRange, Scenario, SweepSpec
from classes.waveguide import AtomicEnsemble, WaveguideGeometry
from data.constants import (
    angular_freq_from_rad_s,
    length_from_cm,
    length_from_nm,
    length_from_um,
    time_from_us,
)
from lib.errors import InvalidParameter, ScenarioParseError

logger = logging.getLogger(__name__)

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "data" / "scenarios"

_PER_CHANNEL = {
    "channel{l}.wavelength_nm": float,
    "channel{l}.gamma_ge_per_s": float,
    "channel{l}.rabi_rad_per_s": float,
    "channel{l}.gamma_gd_per_s": float,
    "rydberg{l}.dipole_ea0": float,
    "rydberg{l}.principal_n": int,
    "rydberg{l}.parabolic_q": int,
    "rydberg{l}.magnetic_m": int,
    "pulse{l}.content": str,
    "pulse{l}.photons": int,
    "pulse{l}.alpha_sq": float,
    "pulse{l}.shape": str,
    "pulse{l}.duration_us": float,
    "pulse{l}.center_cm": float,
    "pulse{l}.taper": float,
}

KEY_TYPES: Dict[str, type] = {
    "name": str,
    "experiment": str,
    "waveguide.length_cm": float,
    "waveguide.field_width_um": float,
    "waveguide.atom_width_um": float,
    "ensemble.atom_count": float,
    **{k.format(l=l): t for l in (1, 2) for k, t in _PER_CHANNEL.items()},
    "qnd.n_max": int,
    "potential.zeta_min": float,
    "potential.zeta_max": float,
    "potential.points": int,
    "surface.points": int,
    "sweep.parameter": str,
    "sweep.start": float,
    "sweep.stop": float,
    "sweep.steps": int,
    "sweep.experiment": str,
    "constraints.strict_margin": float,
    "constraints.plain_margin": float,
    "constraints.coherent_sigmas": float,
    "constraints.signal_self_interaction": bool,
    "numerics.quad_tol": float,
}

MEDIUM_KEYS = (
    "waveguide.length_cm", "waveguide.field_width_um", "waveguide.atom_width_um", "ensemble.atom_count",
    *(k.format(l=l) for l in (1, 2) for k in (
        "channel{l}.wavelength_nm", "channel{l}.gamma_ge_per_s", "channel{l}.rabi_rad_per_s",
        "pulse{l}.content", "pulse{l}.shape", "pulse{l}.duration_us",
    )),
)

SWEEPABLE = tuple(k for k, t in KEY_TYPES.items() if t in (int, float) and not k.startswith("sweep."))


def _check_type(key: str, value: Any) -> Any:
    expected = KEY_TYPES[key]
    # bool is an int subclass; keep it out of numeric keys
    if expected is bool:
        ok = isinstance(value, bool)
    elif expected is int:
        ok = isinstance(value, int) and not isinstance(value, bool)
    elif expected is float:
        ok = isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)
        value = float(value) if ok else value
    else:
        ok = isinstance(value, str)
    if not ok:
        raise ScenarioParseError(f"Key {key!r} expects {expected.__name__}, got {value!r}")
    return value


def parse_values(raw: Mapping[str, Any]) -> Dict[str, Any]:
    """Type-check a flat mapping against KEY_TYPES."""
    if not isinstance(raw, Mapping):
        raise ScenarioParseError(f"A scenario is a flat JSON object, got {type(raw).__name__}")
    unknown = sorted(set(raw) - set(KEY_TYPES))
    if unknown:
        raise ScenarioParseError(f"Unknown scenario keys: {', '.join(unknown)}")
    return {k: _check_type(k, v) for k, v in raw.items()}


def _require(values: Mapping[str, Any], key: str) -> Any:
    if key not in values:
        raise ScenarioParseError(f"Scenario is missing {key!r}")
    return values[key]


def _experiment(value: str, key: str) -> Experiment:
    try:
        return Experiment(value)
    except ValueError:
        choices = ", ".join(e.value for e in Experiment)
        raise ScenarioParseError(f"{key} must be one of {choices}, got {value!r}") from None


def _rydberg(values: Mapping[str, Any], l: int) -> RydbergState:
    dipole = values.get(f"rydberg{l}.dipole_ea0")
    n = values.get(f"rydberg{l}.principal_n")
    q = values.get(f"rydberg{l}.parabolic_q")
    if dipole is not None and (n is not None or q is not None):
        raise ScenarioParseError(f"rydberg{l}: give either dipole_ea0 or the quantum numbers, not both")
    if dipole is not None:
        return RydbergState.from_ea0(dipole)
    if n is None and q is None:
        raise ScenarioParseError(f"rydberg{l}: dipole_ea0 or principal_n/parabolic_q is required")
    return RydbergState(n, q, values.get(f"rydberg{l}.magnetic_m", 0))


def _content(values: Mapping[str, Any], l: int) -> PhotonContent:
    kind = _require(values, f"pulse{l}.content")
    if kind == "fock":
        if f"pulse{l}.alpha_sq" in values:
            raise ScenarioParseError(f"pulse{l}.alpha_sq only applies to coherent pulses")
        return Fock(_require(values, f"pulse{l}.photons"))
    if kind == "coherent":
        if f"pulse{l}.photons" in values:
            raise ScenarioParseError(f"pulse{l}.photons only applies to Fock pulses")
        alpha_sq = _require(values, f"pulse{l}.alpha_sq")
        if alpha_sq < 0:
            raise ScenarioParseError(f"pulse{l}.alpha_sq must be >= 0, got {alpha_sq!r}")
        return Coherent(math.sqrt(alpha_sq))
    raise ScenarioParseError(f"pulse{l}.content must be 'fock' or 'coherent', got {kind!r}")


def _pulse(values: Mapping[str, Any], l: int, channel: EitChannel) -> PulseSpec:
    L = channel.ensemble.geometry.length
    shape = _require(values, f"pulse{l}.shape")
    duration = time_from_us(_require(values, f"pulse{l}.duration_us"))
    center = values.get(f"pulse{l}.center_cm")
    center = None if center is None else length_from_cm(center)
    content = _content(values, l)
    if shape == "gaussian":
        if f"pulse{l}.taper" in values:
            raise ScenarioParseError(f"pulse{l}.taper only applies to tukey pulses")
        return PulseSpec.gaussian(L, duration, channel.group_velocity, content, center=center)
    if shape == "tukey":
        return PulseSpec.tukey(L, duration, channel.group_velocity, content, center=center,
                               taper=values.get(f"pulse{l}.taper", 0.2))
    raise ScenarioParseError(f"pulse{l}.shape must be 'gaussian' or 'tukey', got {shape!r}")


def build_pair(values: Mapping[str, Any]) -> ChannelPair:
    geometry = WaveguideGeometry(
        length_from_cm(_require(values, "waveguide.length_cm")),
        length_from_um(_require(values, "waveguide.field_width_um")),
        length_from_um(_require(values, "waveguide.atom_width_um")),
    )
    ensemble = AtomicEnsemble(_require(values, "ensemble.atom_count"), geometry)
    channels = []
    for l in (1, 2):
        transition = Transition(
            length_from_nm(_require(values, f"channel{l}.wavelength_nm")),
            _require(values, f"channel{l}.gamma_ge_per_s"),
        )
        channels.append(EitChannel(
            l, transition, angular_freq_from_rad_s(_require(values, f"channel{l}.rabi_rad_per_s")),
            _rydberg(values, l), ensemble, values.get(f"channel{l}.gamma_gd_per_s"),
        ))
    return ChannelPair(*channels)


def compile_scenario(raw: Mapping[str, Any], experiment: Optional[Experiment] = None) -> Scenario:
    """Build a Scenario from a flat mapping; ``experiment`` overrides the file's (sweep points)."""
    values = parse_values(raw)
    name = values.get("name", "scenario")
    kind = experiment or _experiment(_require(values, "experiment"), "experiment")

    potential = PotentialRange(
        values.get("potential.zeta_min", -6.0),
        values.get("potential.zeta_max", 6.0),
        values.get("potential.points", 601),
    )
    options = ConstraintOptions(
        values.get("constraints.strict_margin", 10.0),
        values.get("constraints.plain_margin", 1.0),
        values.get("constraints.coherent_sigmas", 2.0),
        values.get("constraints.signal_self_interaction", True),
    )

    sweep = None
    if kind is Experiment.SWEEP:
        parameter = _require(values, "sweep.parameter")
        if parameter not in SWEEPABLE:
            raise ScenarioParseError(f"sweep.parameter {parameter!r} is not a numeric scenario key")
        sweep = SweepSpec(
            parameter, _require(values, "sweep.start"), _require(values, "sweep.stop"),
            _require(values, "sweep.steps"),
            _experiment(_require(values, "sweep.experiment"), "sweep.experiment"),
        )

    pair = pulse1 = pulse2 = None
    needs_medium = kind is not Experiment.POTENTIAL_CURVE or any(k in values for k in MEDIUM_KEYS)
    # a swept key may be left out of the file; each point fills it in
    pending = kind is Experiment.SWEEP and sweep.parameter not in values
    if needs_medium and not pending:
        pair = build_pair(values)
        pulse1 = _pulse(values, 1, pair.first)
        pulse2 = _pulse(values, 2, pair.second)

    n_max = values.get("qnd.n_max")
    if kind is Experiment.QND:
        n_max = _require(values, "qnd.n_max")
        if not isinstance(pulse1.content, Coherent):
            raise ScenarioParseError("The qnd experiment needs a coherent probe in pulse1")
        if not isinstance(pulse2.content, Fock):
            raise ScenarioParseError("The qnd experiment needs a Fock signal in pulse2")

    scenario = Scenario(
        name=name, experiment=kind, values=values, pair=pair, pulse1=pulse1, pulse2=pulse2,
        n_max=n_max, potential=potential, surface_points=values.get("surface.points"), sweep=sweep,
        constraints=options, quad_tol=values.get("numerics.quad_tol"),
    )
    logger.info("Compiled scenario %r (%s)", name, kind.value)
    return scenario


def load_scenario(path) -> Scenario:
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ScenarioParseError(f"Cannot read scenario {str(path)!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(f"{path.name}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return compile_scenario(raw)


def bundled_scenario(name: str) -> Scenario:
    """One of the scenario files shipped in data/scenarios (without the .json suffix)."""
    return load_scenario(SCENARIO_DIR / f"{name}.json")


def sweep_values(scenario: Scenario, value: float) -> Dict[str, Any]:
    """Flat values of one sweep point: the swept key replaced and the sweep keys dropped."""
    if scenario.sweep is None:
        raise InvalidParameter("Scenario is not a sweep")
    key = scenario.sweep.parameter
    if KEY_TYPES[key] is int:
        if not float(value).is_integer():
            raise ScenarioParseError(f"Swept key {key!r} is an integer; {value!r} is not")
        value = int(value)
    point = {k: v for k, v in scenario.values.items() if not k.startswith("sweep.")}
    point[key] = value
    point["experiment"] = scenario.sweep.experiment.value
    return point
