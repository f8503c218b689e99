import json

import pytest

from lib.scenario_loader import SCENARIO_DIR, bundled_scenario, compile_scenario


def _values(name):
    with open(SCENARIO_DIR / f"{name}.json", encoding="utf-8") as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def gate_values():
    return _values("paper_phase_gate")


@pytest.fixture(scope="session")
def qnd_values():
    return _values("paper_qnd")


@pytest.fixture(scope="session")
def gate_scenario():
    return bundled_scenario("paper_phase_gate")


@pytest.fixture(scope="session")
def qnd_scenario():
    return bundled_scenario("paper_qnd")


@pytest.fixture(scope="session")
def gate_pair(gate_scenario):
    return gate_scenario.pair


@pytest.fixture
def scenario_with(gate_values):
    """Compile the phase-gate file with some keys replaced (None removes a key)."""
    def build(base=None, **changes):
        values = dict(gate_values if base is None else base)
        for key, value in changes.items():
            key = key.replace("__", ".")
            if value is None:
                values.pop(key, None)
            else:
                values[key] = value
        return compile_scenario(values)
    return build


@pytest.fixture(scope="session")
def short_scenario(gate_values):
    """The phase-gate medium cut to 100 um at the same density, so grids at w/4 cover whole pulses."""
    values = dict(gate_values)
    values["waveguide.length_cm"] = 0.01
    values["ensemble.atom_count"] = 500
    values["pulse1.duration_us"] = 0.9
    values["pulse2.duration_us"] = 0.9
    values.pop("surface.points")
    return compile_scenario(values)
