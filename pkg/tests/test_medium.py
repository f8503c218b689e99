import math

import pytest

from classes.eit_channel import ChannelPair, EitChannel, Transition
from classes.rydberg_state import RydbergState
from classes.waveguide import AtomicEnsemble, WaveguideGeometry
from data.constants import CODATA2018
from lib.errors import ComputedVelocityExceedsC, InvalidParameter, InvalidQuantumNumbers
from lib.medium import (
    absorption_coefficient,
    check_mixing_consistency,
    eit_bandwidth,
    group_velocity,
    mixing_angle_sin2,
)


def test_effective_width_and_density(gate_pair):
    assert gate_pair.effective_width == pytest.approx(math.sqrt(2.0) * 1e-6, rel=1e-12)
    assert gate_pair.ensemble.effective_density == pytest.approx(1.989e17, rel=1e-3)


def test_optical_depths(gate_pair):
    assert gate_pair.first.optical_depth == pytest.approx(600.3, rel=1e-3)
    assert gate_pair.second.optical_depth == pytest.approx(578.0, rel=2e-3)


def test_group_velocities_and_bandwidths(gate_pair):
    assert gate_pair.first.group_velocity == pytest.approx(99.99, rel=1e-3)
    assert gate_pair.second.group_velocity == pytest.approx(100.5, rel=1e-3)
    assert gate_pair.first.eit_bandwidth == pytest.approx(1.225e5, rel=2e-3)
    assert gate_pair.second.eit_bandwidth == pytest.approx(1.209e5, rel=2e-3)


def test_slow_light_is_almost_all_matter(gate_pair):
    ch = gate_pair.first
    assert ch.sin2_theta == pytest.approx(1.0 - ch.group_velocity / CODATA2018.c_light, rel=1e-15)
    assert ch.transit_time == pytest.approx(1e-4, rel=1e-3)


def test_velocity_at_or_above_c_is_rejected():
    with pytest.raises(ComputedVelocityExceedsC):
        group_velocity(rabi=1e12, kappa=1.0, gamma_ge=1.0)


def test_mixing_angle_bounds():
    with pytest.raises(InvalidParameter):
        mixing_angle_sin2(0.0)
    assert mixing_angle_sin2(CODATA2018.c_light) == 0.0


def test_bandwidth_needs_positive_depth():
    with pytest.raises(InvalidParameter):
        eit_bandwidth(1e6, 1e7, 0.0)


def test_absorption_rejects_negative_density():
    with pytest.raises(InvalidParameter):
        absorption_coefficient(Transition(795e-9, 1.8e7), -1.0)


def test_geometry_validation():
    with pytest.raises(InvalidParameter):
        WaveguideGeometry(0.01, 2e-6, 3e-6)
    with pytest.raises(InvalidParameter):
        WaveguideGeometry(0.0, 2e-6, 2e-6)


def test_unequal_channels_flagged(gate_pair):
    # v1 and v2 differ by half a percent
    assert not gate_pair.check_equal_mixing(rel_tol=1e-3)
    assert gate_pair.check_equal_mixing(rel_tol=1e-2)
    assert gate_pair.mean_velocity == pytest.approx(
        0.5 * (gate_pair.first.group_velocity + gate_pair.second.group_velocity))


def test_mixing_consistency_via_coupling(gate_pair):
    ch = gate_pair.first
    g_ = ch.ensemble.geometry
    cos2 = ch.group_velocity / CODATA2018.c_light
    tan2 = (1.0 - cos2) / cos2
    g = math.sqrt(tan2 * ch.control_rabi ** 2 / ch.ensemble.atom_count) * g_.atom_width / g_.effective_width
    assert check_mixing_consistency(ch, g)
    assert not check_mixing_consistency(ch, 2.0 * g)


def test_channel_pair_requires_shared_ensemble(gate_pair):
    other = AtomicEnsemble(1e4, gate_pair.ensemble.geometry)
    second = EitChannel(2, gate_pair.second.transition, gate_pair.second.control_rabi,
                        gate_pair.second.rydberg_state, other)
    with pytest.raises(InvalidParameter):
        ChannelPair(gate_pair.first, second)
    with pytest.raises(KeyError):
        gate_pair[3]


@pytest.mark.parametrize("n, q, m", [(0, 0, 0), (15, 15, 0), (15, 14, 15), (15, -1, 0)])
def test_invalid_quantum_numbers(n, q, m):
    with pytest.raises(InvalidQuantumNumbers):
        RydbergState(n, q, m)


def test_rydberg_dipole_from_quantum_numbers():
    assert RydbergState(15, 14).dipole_ea0 == pytest.approx(315.0, rel=1e-12)
    assert str(RydbergState(15, 14)) == "d(n=15, q=14, m=0)"
