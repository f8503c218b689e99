import cmath
import math

import numpy as np
import pytest

from classes.ddi_potential import DdiCoupling
from classes.pulse_spec import Coherent, Fock, PulseSpec
from classes.two_photon_state import PhaseKernel
from data.constants import CODATA2018
from lib.ddi import pair_coupling
from lib.errors import EnvelopeTooSharp, GridTooCoarse, InvalidParameter, PulseLeftMedium
from lib.propagation import (
    accumulated_phase,
    check_envelope_smooth,
    complete_pass_phase,
    evolve_two_photon,
    finite_length_phase,
    initial_state,
    pair_uniform_phase,
    phase_surface,
    probe_phase,
    self_phase_estimate,
    surface_grid,
    uniform_phase,
)

P = 315.0 * CODATA2018.ea0
W = 1e-6
V = 100.0
S = 1.0 - V / CODATA2018.c_light


def _coupling():
    return DdiCoupling(P, P)


def test_gate_phase_is_near_pi(gate_pair):
    assert pair_uniform_phase(gate_pair) == pytest.approx(math.pi, rel=0.05)


def test_qnd_phase(qnd_scenario):
    assert pair_uniform_phase(qnd_scenario.pair) == pytest.approx(0.7, rel=0.05)


def test_uniform_phase_forms_agree():
    single = uniform_phase(_coupling(), W, V, S)
    assert uniform_phase(_coupling(), W, V, S, v2=V, sin2_theta2=S) == pytest.approx(single, rel=1e-14)
    assert single == pytest.approx(P * P / (4 * math.pi * CODATA2018.epsilon0) * S ** 2
                                   / (CODATA2018.hbar * W ** 2 * V), rel=1e-12)


def test_zero_coupling_gives_zero_phase():
    c = DdiCoupling(0.0, P)
    assert uniform_phase(c, W, V, S) == 0.0
    assert accumulated_phase(c, W, V, S, 1e-3, 0.0, 1e-5) == 0.0


@pytest.mark.parametrize("kwargs", [dict(v=0.0), dict(sin2_theta=0.0), dict(sin2_theta=1.5)])
def test_uniform_phase_rejects_bad_inputs(kwargs):
    args = dict(coupling=_coupling(), w=W, v=V, sin2_theta=S)
    args.update(kwargs)
    with pytest.raises(InvalidParameter):
        uniform_phase(**args)


def test_no_phase_before_interaction(gate_pair):
    L = gate_pair.length
    assert accumulated_phase(_coupling(), W, V, S, L, 0.0, 0.0) == 0.0
    with pytest.raises(InvalidParameter):
        accumulated_phase(_coupling(), W, V, S, L, 0.0, -1e-6)


def test_complete_pass_reaches_uniform_phase(gate_pair):
    L = gate_pair.length
    a, b = gate_pair.first, gate_pair.second
    c = pair_coupling(gate_pair, 1, 2)
    w = gate_pair.effective_width
    phi = accumulated_phase(c, w, a.group_velocity, a.sin2_theta, L, 0.0, gate_pair.transit_time,
                            v2=b.group_velocity, sin2_theta2=b.sin2_theta)
    exact = finite_length_phase(c, w, a.group_velocity, a.sin2_theta, L,
                                v2=b.group_velocity, sin2_theta2=b.sin2_theta)
    assert phi == pytest.approx(exact, rel=1e-6)
    assert phi == pytest.approx(pair_uniform_phase(gate_pair), rel=0.01)


def test_pulses_that_never_meet_pick_up_nothing(gate_pair):
    L = gate_pair.length
    phi = accumulated_phase(_coupling(), W, V, S, 0.0, L, 0.25 * L / V)
    assert abs(phi) < 1e-6 * uniform_phase(_coupling(), W, V, S)


def test_phase_is_additive_in_time():
    t1, t2 = 3e-8, 5e-8
    d = 4e-6
    whole = accumulated_phase(_coupling(), W, V, S, d, 0.0, t1 + t2, 1e-10)
    late = accumulated_phase(_coupling(), W, V, S, d, 0.0, t2, 1e-10)
    early = accumulated_phase(_coupling(), W, V, S, d - 2 * V * t2, 0.0, t1, 1e-10)
    assert whole == pytest.approx(late + early, rel=1e-8)


def test_trapezoid_converges_at_second_order():
    scale = math.sqrt(2.0) * W
    L = 100.0 * scale
    exact = finite_length_phase(_coupling(), W, V, S, L)
    errors = [
        abs(accumulated_phase(_coupling(), W, V, S, L, 0.0, L / V, method="trapezoid", steps=n) - exact)
        for n in (2000, 4000, 8000)
    ]
    assert math.log2(errors[0] / errors[1]) >= 1.9
    assert math.log2(errors[1] / errors[2]) >= 1.9


def test_trapezoid_needs_steps():
    with pytest.raises(InvalidParameter):
        accumulated_phase(_coupling(), W, V, S, 1e-5, 0.0, 1e-7, method="trapezoid")
    with pytest.raises(InvalidParameter):
        accumulated_phase(_coupling(), W, V, S, 1e-5, 0.0, 1e-7, method="simpson")


def test_finite_medium_approaches_uniform_phase():
    scale = math.sqrt(2.0) * W
    uniform = uniform_phase(_coupling(), W, V, S)
    ratios = [finite_length_phase(_coupling(), W, V, S, x * scale) / uniform for x in (1, 3, 10, 30, 100)]
    assert all(a < b for a, b in zip(ratios, ratios[1:]))
    assert all(r < 1 for r in ratios)
    assert 1 - ratios[-1] == pytest.approx(0.5 / 100 ** 2, rel=0.01)


def test_complete_pass_kernels_agree(gate_pair):
    closed = complete_pass_phase(gate_pair)
    exact = complete_pass_phase(gate_pair, PhaseKernel.EXACT_QUADRATURE, samples=5)
    assert closed.kernel is PhaseKernel.CLOSED_FORM
    assert closed.uniformity_spread == 0.0
    assert exact.phi == pytest.approx(closed.phi, rel=1e-6)
    assert exact.uniformity_spread < 1e-6 * closed.phi


def test_initial_state(short_scenario):
    pair = short_scenario.pair
    p1, p2 = short_scenario.pulse1, short_scenario.pulse2
    z1, z2 = surface_grid(pair, 9, t=0.0)
    state = initial_state(p1, p2, pair, z1, z2)
    assert state.time == 0.0
    assert np.all(state.phase == 0.0)
    expected = np.outer(p1.amplitude(z1 + p1.center), p2.amplitude(z2 - pair.length + p2.center))
    assert np.allclose(state.wavefunction, expected, rtol=1e-14, atol=0)


def test_evolution_translates_modulus_and_writes_phase(short_scenario):
    pair = short_scenario.pair
    p1, p2 = short_scenario.pulse1, short_scenario.pulse2
    L = pair.length
    t = 0.5 * pair.transit_time
    z1, z2 = surface_grid(pair, 9, t=t)
    state = evolve_two_photon(initial_state(p1, p2, pair, z1, z2), pair, t)
    v1, v2 = pair.first.group_velocity, pair.second.group_velocity
    modulus = np.outer(np.abs(p1.amplitude(z1 - v1 * t + p1.center)),
                       np.abs(p2.amplitude(z2 + v2 * t - L + p2.center)))
    assert np.allclose(state.modulus, modulus, rtol=1e-12, atol=0)
    assert state.valid.all()
    i, j = 2, 6
    direct = accumulated_phase(pair_coupling(pair, 1, 2), pair.effective_width, v1, pair.first.sin2_theta,
                               z1[i], z2[j], t, v2=v2, sin2_theta2=pair.second.sin2_theta)
    assert state.phase[i, j] == pytest.approx(direct, rel=1e-5)
    # relative to the complete pass, half-way the pulses have crossed half the kernel
    assert 0 < state.phase.max() < pair_uniform_phase(pair)


def test_evolution_is_cumulative(short_scenario):
    pair = short_scenario.pair
    p1, p2 = short_scenario.pulse1, short_scenario.pulse2
    t = 0.6 * pair.transit_time
    z1, z2 = surface_grid(pair, 5, t=t)
    start = initial_state(p1, p2, pair, z1, z2)
    once = evolve_two_photon(start, pair, t)
    twice = evolve_two_photon(evolve_two_photon(start, pair, 0.25 * t), pair, 0.75 * t)
    assert twice.time == pytest.approx(once.time, rel=1e-15)
    assert np.allclose(twice.phase, once.phase, rtol=1e-9, atol=0)


def test_grid_errors(short_scenario):
    pair = short_scenario.pair
    p1, p2 = short_scenario.pulse1, short_scenario.pulse2
    L = pair.length
    z = np.linspace(0.4 * L, 0.4 * L + 0.9 * pair.effective_width, 5)
    with pytest.raises(GridTooCoarse):
        initial_state(p1, p2, pair, np.linspace(0.0, L, 10), z)
    with pytest.raises(PulseLeftMedium):
        initial_state(p1, p2, pair, z - 0.5 * L, z)
    with pytest.raises(InvalidParameter):
        initial_state(p1, p2, pair, z[::-1], z)
    state = initial_state(p1, p2, pair, z, z)
    with pytest.raises(PulseLeftMedium):
        evolve_two_photon(state, pair, 2.0 * pair.transit_time)
    with pytest.raises(GridTooCoarse):
        surface_grid(pair, 400)
    with pytest.raises(InvalidParameter):
        surface_grid(pair, 1)


def test_state_needs_single_photons(short_scenario, qnd_scenario):
    pair = short_scenario.pair
    z = surface_grid(pair, 3)[0]
    with pytest.raises(InvalidParameter):
        initial_state(qnd_scenario.pulse1, short_scenario.pulse2, pair, z, z)


def test_phase_uniform_over_both_pulses(gate_scenario):
    state = phase_surface(gate_scenario.pulse1, gate_scenario.pulse2, gate_scenario.pair, 9)
    phi = pair_uniform_phase(gate_scenario.pair)
    assert state.valid.all()
    assert state.phase_spread() < 1e-6 * phi
    assert np.allclose(state.phase, phi, rtol=1e-6, atol=0)
    rows = list(state.rows())
    assert len(rows) == 81
    assert rows[1][0] == state.z1[0] and rows[1][1] == state.z2[1]


def test_normalization_is_translation_invariant(gate_scenario):
    L, v = gate_scenario.pair.length, gate_scenario.pair.first.group_velocity
    z = np.linspace(0.2 * L, 0.5 * L, 31)
    for build in (
        lambda c: PulseSpec.tukey(L, 90e-6, v, Fock(1), center=c),
        lambda c: PulseSpec.gaussian(L, 10e-6, v, Fock(1), center=c),
    ):
        left, right = build(0.48 * L), build(0.52 * L)
        assert left.normalization() == pytest.approx(1.0, abs=1e-8)
        assert right.normalization() == pytest.approx(1.0, abs=1e-8)
        assert right.peak_intensity == pytest.approx(left.peak_intensity, rel=1e-9)
        np.testing.assert_allclose(right.intensity(z + 0.04 * L), left.intensity(z), rtol=1e-9, atol=1e-12)


def test_probe_phase_vacuum_and_photon_count(qnd_scenario):
    probe, signal, pair = qnd_scenario.pulse1, qnd_scenario.pulse2, qnd_scenario.pair
    vacuum = PulseSpec.tukey(pair.length, 90e-6, pair.second.group_velocity, Fock(0))
    assert probe_phase(probe, vacuum, pair) == complex(1.0, 0.0)
    one = PulseSpec.tukey(pair.length, 90e-6, pair.second.group_velocity, Fock(1))
    single = probe_phase(probe, one, pair, PhaseKernel.DELTA_APPROXIMATION)
    double = probe_phase(probe, signal, pair, PhaseKernel.DELTA_APPROXIMATION)
    assert double == pytest.approx(single ** 2, rel=1e-12)
    assert cmath.phase(single) == pytest.approx(pair_uniform_phase(pair), rel=1e-12)


def test_probe_phase_exact_kernel_matches_delta(qnd_scenario):
    probe, pair = qnd_scenario.pulse1, qnd_scenario.pair
    L = pair.length
    v = pair.second.group_velocity
    signal = PulseSpec.tukey(L, 0.5 * L / v, v, Fock(1), taper=1.0)
    exact = probe_phase(probe, signal, pair)
    delta = probe_phase(probe, signal, pair, PhaseKernel.DELTA_APPROXIMATION)
    assert abs(exact) == pytest.approx(1.0, abs=1e-12)
    assert cmath.phase(exact) == pytest.approx(cmath.phase(delta), rel=0.02)


def test_probe_phase_argument_checks(qnd_scenario):
    probe, signal, pair = qnd_scenario.pulse1, qnd_scenario.pulse2, qnd_scenario.pair
    with pytest.raises(InvalidParameter):
        probe_phase(signal, signal, pair)
    with pytest.raises(InvalidParameter):
        probe_phase(probe, probe, pair)
    with pytest.raises(InvalidParameter):
        probe_phase(probe, signal, pair, PhaseKernel.CLOSED_FORM)


def test_sharp_signal_is_rejected(qnd_scenario):
    pair = qnd_scenario.pair
    sharp = PulseSpec.tukey(pair.length, 90e-6, pair.second.group_velocity, Fock(1), taper=1e-4)
    with pytest.raises(EnvelopeTooSharp):
        check_envelope_smooth(sharp, pair.effective_width)
    with pytest.raises(EnvelopeTooSharp):
        probe_phase(qnd_scenario.pulse1, sharp, pair)
    check_envelope_smooth(qnd_scenario.pulse2, pair.effective_width)


def test_self_phase_estimate(qnd_scenario):
    pair = qnd_scenario.pair
    a = pair.first
    phi = self_phase_estimate(Coherent(2.0), pair_coupling(pair, 1, 1), pair.effective_width,
                              a.group_velocity, a.sin2_theta)
    assert phi == pytest.approx(0.63, rel=0.05)
    assert phi == pytest.approx(2 * 4 * pair_uniform_phase(pair, 1, 1), rel=1e-12)
