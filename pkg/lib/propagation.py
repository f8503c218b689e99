"""
Shape-preserving counter-propagation of two Rydberg polaritons and the phase they pick up.

Pulse 1 enters at z = 0 moving right, pulse 2 at z = L moving left. Their modulus is carried
unchanged; the interaction only writes a phase on the two-photon amplitude,

    phi(z1, z2, t) = -s1 s2 int_0^t dt' Delta(z1 - z2 - (v1 + v2)(t - t'))

with s_l = sin^2(theta_l). Substituting s = z1 - z2 - (v1 + v2)(t - t') turns it into a
single integral of the 1D kernel, which is what every routine below evaluates.
"""
from __future__ import annotations

import cmath
import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy.integrate import trapezoid

from classes.ddi_potential import DdiCoupling
from classes.eit_channel import ChannelPair
from classes.pulse_spec import Coherent, Fock, PulseSpec
from classes.two_photon_state import PhaseKernel, PhaseShiftResult, TwoPhotonState
from data.constants import CODATA2018
from lib.ddi import (
    integrate_reduced,
    pair_coupling,
    potential_1d_antiderivative,
    reduced_potential,
)
from lib.errors import (
    EnvelopeTooSharp,
    GridTooCoarse,
    InvalidParameter,
    PulseLeftMedium,
)
from lib.quadrature import adaptive_quad, check_tolerance, peak_breakpoints

logger = logging.getLogger(__name__)

SMOOTHNESS_LIMIT = 0.1     # max change of |f| over one w, relative to its peak
SEPARATION_DECIMALS = 12   # separations are grouped to the picometre
_TIME_SLACK = 1e-12


def _pair_factors(v: float, sin2_theta: float,
                  v2: Optional[float], sin2_theta2: Optional[float]) -> Tuple[float, float]:
    """(closing speed v1 + v2, sin^2 theta_1 sin^2 theta_2)"""
    v2 = v if v2 is None else v2
    s2 = sin2_theta if sin2_theta2 is None else sin2_theta2
    for name, value in (("v", v), ("v2", v2)):
        if not value > 0:
            raise InvalidParameter(f"{name} must be > 0, got {value!r}")
    for name, value in (("sin2_theta", sin2_theta), ("sin2_theta2", s2)):
        if not (0.0 < value <= 1.0):
            raise InvalidParameter(f"{name} must lie in (0, 1], got {value!r}")
    return v + v2, sin2_theta * s2


def _strength(coupling: DdiCoupling, w: float) -> float:
    """C / (hbar w^2): the area of Delta is -2 of these."""
    if not w > 0:
        raise InvalidParameter(f"Effective width must be > 0, got {w!r}")
    return coupling.coefficient / (CODATA2018.hbar * w ** 2)


def uniform_phase(coupling: DdiCoupling, w: float, v: float, sin2_theta: float, *,
                  v2: Optional[float] = None, sin2_theta2: Optional[float] = None) -> float:
    """Complete-pass conditional phase C sin^4(theta) / (hbar w^2 v).

    With distinct channels this is 2 C s1 s2 / (hbar w^2 (v1 + v2)).
    """
    if v2 is None and sin2_theta2 is None:
        _pair_factors(v, sin2_theta, None, None)
        return _strength(coupling, w) * sin2_theta ** 2 / v
    closing, s12 = _pair_factors(v, sin2_theta, v2, sin2_theta2)
    return 2.0 * _strength(coupling, w) * s12 / closing


def finite_length_phase(coupling: DdiCoupling, w: float, v: float, sin2_theta: float, length: float, *,
                        v2: Optional[float] = None, sin2_theta2: Optional[float] = None) -> float:
    """Exact complete-pass phase in a medium of finite length: uniform_phase * sqrt(pi) X erfcx(X)."""
    if not length > 0:
        raise InvalidParameter(f"Medium length must be > 0, got {length!r}")
    x = length / (math.sqrt(2.0) * w)
    return uniform_phase(coupling, w, v, sin2_theta, v2=v2, sin2_theta2=sin2_theta2) * -potential_1d_antiderivative(x)


def _trapezoid_reduced(zeta_a: float, zeta_b: float, steps: int) -> float:
    """Fixed-step trapezoid of f over [zeta_a, zeta_b], with a node on the cusp at 0."""
    if int(steps) != steps or steps < 1:
        raise InvalidParameter(f"steps must be a positive integer, got {steps!r}")
    sign = 1.0
    if zeta_a > zeta_b:
        zeta_a, zeta_b, sign = zeta_b, zeta_a, -1.0
    span = zeta_b - zeta_a
    if span == 0.0:
        return 0.0
    pieces = [(zeta_a, 0.0), (0.0, zeta_b)] if zeta_a < 0.0 < zeta_b else [(zeta_a, zeta_b)]
    total = 0.0
    for lo, hi in pieces:
        n = max(1, int(round(steps * (hi - lo) / span)))
        x = np.linspace(lo, hi, n + 1)
        total += trapezoid(reduced_potential(x), x)
    return sign * total


def accumulated_phase(coupling: DdiCoupling, w: float, v: float, sin2_theta: float,
                      z1: float, z2: float, t: float, quad_tol: float = 1e-8, *,
                      v2: Optional[float] = None, sin2_theta2: Optional[float] = None,
                      method: str = "adaptive", steps: Optional[int] = None) -> float:
    """Two-photon phase at final coordinates (z1, z2) after an interaction time t.

    ``method`` is "adaptive" (QUADPACK with breakpoints at the kernel's peak) or "trapezoid"
    (``steps`` equal intervals in zeta).
    """
    if not t >= 0:
        raise InvalidParameter(f"Time must be >= 0, got {t!r}")
    check_tolerance(quad_tol)
    closing, s12 = _pair_factors(v, sin2_theta, v2, sin2_theta2)
    strength = _strength(coupling, w)
    if t == 0 or strength == 0.0:
        return 0.0
    scale = math.sqrt(2.0) * w
    d = float(z1) - float(z2)
    zeta_a, zeta_b = (d - closing * t) / scale, d / scale
    if method == "adaptive":
        integral = integrate_reduced(zeta_a, zeta_b, tol=quad_tol)
    elif method == "trapezoid":
        if steps is None:
            raise InvalidParameter("The trapezoid method needs steps")
        integral = _trapezoid_reduced(zeta_a, zeta_b, steps)
    else:
        raise InvalidParameter(f"Unknown integration method {method!r}")
    return -(s12 / closing) * strength * integral


# ---- channel-pair conveniences ----

def pair_uniform_phase(pair: ChannelPair, first: int = 1, second: int = 2,
                       coupling: Optional[DdiCoupling] = None) -> float:
    """phi_ll' for the pair: self terms use v_l, cross terms the closing speed v1 + v2."""
    coupling = pair_coupling(pair, first, second) if coupling is None else coupling
    w = pair.effective_width
    a, b = pair[first], pair[second]
    if first == second:
        return uniform_phase(coupling, w, a.group_velocity, a.sin2_theta)
    return uniform_phase(coupling, w, a.group_velocity, a.sin2_theta,
                         v2=b.group_velocity, sin2_theta2=b.sin2_theta)


def _pair_phase(pair: ChannelPair, z1: float, z2: float, t: float, quad_tol: float) -> float:
    return accumulated_phase(
        pair_coupling(pair, 1, 2), pair.effective_width,
        pair.first.group_velocity, pair.first.sin2_theta, z1, z2, t, quad_tol,
        v2=pair.second.group_velocity, sin2_theta2=pair.second.sin2_theta,
    )


def complete_pass_phase(pair: ChannelPair, kernel: PhaseKernel = PhaseKernel.CLOSED_FORM,
                        quad_tol: float = 1e-8, samples: int = 9) -> PhaseShiftResult:
    """Conditional phase after both pulses have crossed the whole medium.

    The exact kernel samples final separations over the central halves of two pulses of the
    medium's length; the spread is max - min over those samples.
    """
    if kernel is not PhaseKernel.EXACT_QUADRATURE:
        return PhaseShiftResult(pair_uniform_phase(pair), 0.0, kernel)
    L = pair.length
    t_out = pair.transit_time
    offsets = np.linspace(-0.5 * L, 0.5 * L, samples)
    values = np.array([_pair_phase(pair, L + off, 0.0, t_out, quad_tol) for off in offsets])
    mid = values[samples // 2]
    logger.debug("complete-pass phase %.9g rad over %d separations, spread %.3g", mid, samples, np.ptp(values))
    return PhaseShiftResult(float(mid), float(np.ptp(values)), kernel)


# ---- two-photon amplitude on a grid ----

def _validate_grid(name: str, grid, length: float, w: float) -> np.ndarray:
    z = np.asarray(grid, dtype=float)
    if z.ndim != 1 or z.size == 0:
        raise InvalidParameter(f"{name} must be a non-empty 1D grid")
    if z.size > 1:
        step = np.diff(z)
        if np.any(step <= 0):
            raise InvalidParameter(f"{name} must be strictly increasing")
        if step.max() > 0.25 * w:
            raise GridTooCoarse(
                f"{name} spacing {step.max():.3g} m exceeds w/4 = {0.25 * w:.3g} m; the phase varies on the scale w"
            )
    if z[0] < 0.0 or z[-1] > length:
        raise PulseLeftMedium(f"{name} spans [{z[0]!r}, {z[-1]!r}] m, outside the medium [0, {length!r}] m")
    return z


def _check_pulses(pulse1: PulseSpec, pulse2: PulseSpec, pair: ChannelPair) -> None:
    for label, pulse in ((1, pulse1), (2, pulse2)):
        if not (isinstance(pulse.content, Fock) and pulse.content.n == 1):
            raise InvalidParameter(f"Pulse {label} must carry a single photon, got {pulse.content!r}")
        if not math.isclose(pulse.medium_length, pair.length, rel_tol=1e-12):
            raise InvalidParameter(
                f"Pulse {label} was built for L={pulse.medium_length!r} m, the medium is {pair.length!r} m"
            )


def _amplitudes(pulse: PulseSpec, xi: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    inside = (xi >= 0.0) & (xi <= pulse.medium_length)
    amp = np.zeros(xi.shape, dtype=complex)
    amp[inside] = pulse.amplitude(xi[inside])
    return amp, inside


def _state_at(pulse1: PulseSpec, pulse2: PulseSpec, pair: ChannelPair,
              z1: np.ndarray, z2: np.ndarray, t: float, quad_tol: float) -> TwoPhotonState:
    L = pair.length
    v1, v2 = pair.first.group_velocity, pair.second.group_velocity
    # pulse 1 starts centred on z = 0, pulse 2 on z = L
    a1, in1 = _amplitudes(pulse1, z1 - v1 * t + pulse1.center)
    a2, in2 = _amplitudes(pulse2, z2 + v2 * t - L + pulse2.center)

    if t == 0.0:
        phase = np.zeros((z1.size, z2.size))
    else:
        d = z1[:, None] - z2[None, :]
        keys, inverse = np.unique(np.round(d, SEPARATION_DECIMALS), return_inverse=True)
        values = np.array([_pair_phase(pair, k, 0.0, t, quad_tol) for k in keys])
        phase = values[inverse].reshape(d.shape)
        logger.info("Evaluated the two-photon phase at t=%.6g s on %d distinct separations", t, keys.size)

    valid = np.outer(in1, in2)
    wavefunction = np.outer(a1, a2) * np.exp(1j * phase)
    return TwoPhotonState(pulse1, pulse2, t, z1, z2, wavefunction, phase, valid)


def initial_state(pulse1: PulseSpec, pulse2: PulseSpec, pair: ChannelPair, z1, z2) -> TwoPhotonState:
    """F12 at t = 0 on the lab grid (z1, z2): f1(z1 + c1) f2(z2 - L + c2), zero phase."""
    _check_pulses(pulse1, pulse2, pair)
    w = pair.effective_width
    return _state_at(pulse1, pulse2, pair,
                     _validate_grid("z1", z1, pair.length, w), _validate_grid("z2", z2, pair.length, w),
                     0.0, 1e-8)


def evolve_two_photon(state: TwoPhotonState, pair: ChannelPair, t: float,
                      quad_tol: float = 1e-8) -> TwoPhotonState:
    """Advance ``state`` by t on its own grid.

    The solution is closed in time, so the result is evaluated directly at state.time + t.
    Grid points whose envelope coordinate has left [0, L] are masked invalid with F = 0.
    """
    _check_pulses(state.pulse1, state.pulse2, pair)
    check_tolerance(quad_tol)
    w = pair.effective_width
    z1 = _validate_grid("z1", state.z1, pair.length, w)
    z2 = _validate_grid("z2", state.z2, pair.length, w)
    total = state.time + t
    t_out = pair.transit_time
    if total < 0.0 or total > t_out * (1.0 + _TIME_SLACK):
        raise PulseLeftMedium(f"t={total!r} s lies outside the transit window [0, {t_out!r}] s")
    return _state_at(state.pulse1, state.pulse2, pair, z1, z2, min(total, t_out), quad_tol)


def surface_grid(pair: ChannelPair, points: int, t: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Square patches of ``points`` nodes spaced w/4 around both pulse centres at time t (default t_out)."""
    if int(points) != points or points < 2:
        raise InvalidParameter(f"Surface needs at least 2 points per axis, got {points!r}")
    L = pair.length
    t = pair.transit_time if t is None else t
    h = 0.25 * pair.effective_width
    span = (points - 1) * h
    if span > L:
        raise GridTooCoarse(f"{points} points at spacing w/4 do not fit in the medium")
    offsets = h * (np.arange(points) - 0.5 * (points - 1))

    def patch(centre: float) -> np.ndarray:
        c = min(max(centre, 0.5 * span), L - 0.5 * span)
        return np.clip(c + offsets, 0.0, L)

    return patch(pair.first.group_velocity * t), patch(L - pair.second.group_velocity * t)


def phase_surface(pulse1: PulseSpec, pulse2: PulseSpec, pair: ChannelPair, points: int,
                  quad_tol: float = 1e-8) -> TwoPhotonState:
    """Two-photon amplitude after the complete pass on a patch around the pulse centres."""
    z1, z2 = surface_grid(pair, points)
    return evolve_two_photon(initial_state(pulse1, pulse2, pair, z1, z2), pair, pair.transit_time, quad_tol)


# ---- coherent probe ----

def check_envelope_smooth(pulse: PulseSpec, w: float) -> None:
    """Raise EnvelopeTooSharp if |f| changes by SMOOTHNESS_LIMIT of its peak over any lag w."""
    L = pulse.medium_length
    grid = np.arange(0.0, L - w, 0.5 * w)
    if grid.size == 0:
        raise EnvelopeTooSharp(f"The medium ({L!r} m) is not longer than the interaction range w={w!r} m")
    jump = np.abs(np.abs(pulse.amplitude(grid + w)) - np.abs(pulse.amplitude(grid))).max()
    peak = math.sqrt(pulse.peak_intensity)
    if jump >= SMOOTHNESS_LIMIT * peak:
        raise EnvelopeTooSharp(
            f"|f| changes by {jump / peak:.3g} of its peak over w={w:.3g} m; the delta-kernel picture needs < {SMOOTHNESS_LIMIT}"
        )


def probe_phase(probe: PulseSpec, signal: PulseSpec, pair: ChannelPair,
                kernel: PhaseKernel = PhaseKernel.EXACT_QUADRATURE, quad_tol: float = 1e-8) -> complex:
    """Output probe amplitude ratio <Psi_1(L, t_out)> / alpha_1(0) for a Fock(n) signal.

    The delta kernel gives exp(i phi12 n). The exact kernel integrates Delta against the
    signal intensity over the interaction region; with s = z' - v t' and u = z' + v t' the
    time integral collapses onto the window of envelope coordinates the probe sweeps at
    separation s.
    """
    if not isinstance(probe.content, Coherent):
        raise InvalidParameter(f"The probe must be a coherent pulse, got {probe.content!r}")
    if not isinstance(signal.content, Fock):
        raise InvalidParameter(f"The signal must be a Fock pulse, got {signal.content!r}")
    n = signal.content.n
    if n == 0:
        return complex(1.0, 0.0)
    if kernel is PhaseKernel.DELTA_APPROXIMATION:
        return cmath.exp(1j * pair_uniform_phase(pair) * n)
    if kernel is not PhaseKernel.EXACT_QUADRATURE:
        raise InvalidParameter(f"probe_phase takes the exact or the delta kernel, got {kernel!r}")
    check_tolerance(quad_tol)

    w = pair.effective_width
    check_envelope_smooth(signal, w)
    L = pair.length
    v = pair.mean_velocity
    s12 = pair.first.sin2_theta * pair.second.sin2_theta
    strength = _strength(pair_coupling(pair, 1, 2), w)
    scale = math.sqrt(2.0) * w
    c2 = signal.center
    knots = sorted({k for k in (c2, *signal.knots) if 0.0 < k < L})

    def window(zeta: float) -> float:
        sep = abs(zeta) * scale
        lo, hi = max(0.0, sep - L + c2), min(L, L - sep + c2)
        if hi <= lo:
            return 0.0
        return adaptive_quad(
            lambda x: float(signal.intensity(x)), lo, hi, rel_tol=quad_tol, abs_tol=quad_tol * 1e-3 * L,
            points=[k for k in knots if lo < k < hi], label="signal intensity window",
        )

    x_max = L / scale
    # the integrand is even in zeta
    half = adaptive_quad(
        lambda zeta: reduced_potential(zeta) * window(zeta), 0.0, x_max,
        rel_tol=quad_tol, abs_tol=quad_tol * 1e-3 * L,
        points=peak_breakpoints(0.0, x_max, center=0.0, scale=0.5), label="probe phase",
    )
    exponent = (s12 / L) * (1.0 / (2.0 * v)) * strength * n * 2.0 * half
    logger.debug("probe phase (exact kernel) for n=%d: %.9g rad", n, -exponent)
    return cmath.exp(-1j * exponent)


def self_phase_estimate(probe: Coherent, coupling: DdiCoupling, w: float, v: float, sin2_theta: float) -> float:
    """Self-phase of a coherent probe: 2 C11 sin^4(theta) |alpha(0)|^2 / (hbar w^2 v)."""
    _pair_factors(v, sin2_theta, None, None)
    return 2.0 * _strength(coupling, w) * sin2_theta ** 2 * probe.alpha_sq / v
