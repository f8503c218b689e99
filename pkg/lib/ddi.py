"""
Dipole-dipole interaction between Rydberg polaritons.

The effective 1D kernel in reduced units of 2C/(hbar (sqrt(2) w)^3) is

    f(zeta) = 2|zeta| - sqrt(pi) (1 + 2 zeta^2) erfcx(|zeta|),    zeta = z / (sqrt(2) w)

erfcx keeps e^{zeta^2} erfc(|zeta|) finite, but the two terms still cancel to
O(zeta^-3); past ASYMPTOTIC_SWITCH the exact asymptotic series takes over.
"""
from __future__ import annotations

import logging
import math
from typing import TYPE_CHECKING, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq
from scipy.special import erfcx

from classes.ddi_potential import DdiCoupling, Potential1D
from classes.rydberg_state import RydbergState
from data.constants import CODATA2018
from lib.errors import InvalidParameter, ZeroSeparation
from lib.quadrature import adaptive_quad, check_tolerance, peak_breakpoints

if TYPE_CHECKING:
    from classes.eit_channel import ChannelPair

logger = logging.getLogger(__name__)

SQRT_PI = math.sqrt(math.pi)
ASYMPTOTIC_SWITCH = 8.0
ASYMPTOTIC_TERMS = 30
CONTACT_SWITCH = 0.05
RADIAL_CUTOFF = 12.0   # e^{-u^2} is below 1e-62 past this


def _asymptotic_coefficients(terms: int) -> np.ndarray:
    # erfcx(x) ~ (1/(x sqrt(pi))) sum_k a_k x^-2k,  a_k = (-1)^k (2k-1)!! / 2^k
    a = np.empty(terms + 1)
    a[0] = 1.0
    for k in range(1, terms + 1):
        a[k] = -a[k - 1] * (2 * k - 1) / 2.0
    # f(x) = -sum_k c_k x^-(2k+1),  c_k = 2 a_{k+1} + a_k  (k >= 1)
    return 2.0 * a[2:] + a[1:-1]


_TAIL_COEFFS = _asymptotic_coefficients(ASYMPTOTIC_TERMS)


def rydberg_dipole(state: RydbergState) -> float:
    """(3/2) n q e a0, or the explicit dipole if the state was built from one."""
    return state.dipole_moment


def coupling_between(a: RydbergState, b: RydbergState) -> DdiCoupling:
    return DdiCoupling(rydberg_dipole(a), rydberg_dipole(b))


def potential_3d(coupling: DdiCoupling, separation: Sequence[float]) -> float:
    """C (1 - 3 cos^2 theta) / (hbar R^3), theta measured from the z axis; rad/s."""
    x, y, z = (float(c) for c in separation)
    r2 = x * x + y * y + z * z
    if r2 == 0.0:
        raise ZeroSeparation("The 3D dipole-dipole potential is singular at zero separation")
    r = math.sqrt(r2)
    cos2 = z * z / r2
    return coupling.coefficient * (1.0 - 3.0 * cos2) / (CODATA2018.hbar * r ** 3)


def reduced_potential(zeta):
    """f(zeta) in units of 2C/(hbar (sqrt(2) w)^3). Accepts scalars or arrays."""
    x = np.atleast_1d(np.abs(np.asarray(zeta, dtype=float)))
    out = np.empty_like(x)
    near = x < ASYMPTOTIC_SWITCH
    xn = x[near]
    out[near] = 2.0 * xn - SQRT_PI * (1.0 + 2.0 * xn * xn) * erfcx(xn)
    xf = x[~near]
    if xf.size:
        inv2 = 1.0 / (xf * xf)
        # Horner in 1/x^2, highest order first
        acc = np.zeros_like(xf)
        for c in _TAIL_COEFFS[::-1]:
            acc = acc * inv2 + c
        out[~near] = -acc * inv2 / xf
    if np.ndim(zeta) == 0:
        return float(out[0])
    return out.reshape(np.shape(zeta))


def potential_1d(pot: Potential1D, z):
    """Effective 1D potential Delta(z) in rad/s."""
    return pot.reduced_unit * reduced_potential(pot.zeta(np.asarray(z, dtype=float)))


def potential_1d_antiderivative(zeta):
    """F(zeta) = int_0^zeta f = -sqrt(pi) zeta erfcx(|zeta|); F(+-inf) = -+1."""
    z = np.asarray(zeta, dtype=float)
    out = -np.sign(z) * SQRT_PI * np.abs(z) * erfcx(np.abs(z))
    if np.ndim(zeta) == 0:
        return float(out)
    return out


def potential_1d_integral(pot: Potential1D) -> float:
    """int Delta(z) dz over the whole line = -2C/(hbar w^2), rad m/s."""
    return -2.0 * pot.coupling.coefficient / (CODATA2018.hbar * pot.effective_width ** 2)


def integrate_reduced(zeta_a: float, zeta_b: float, tol: float = 1e-10) -> float:
    """Adaptive quadrature of f over [zeta_a, zeta_b] with breakpoints around the peak."""
    check_tolerance(tol, high=1e-2)
    if zeta_a == zeta_b:
        return 0.0
    sign = 1.0
    if zeta_a > zeta_b:
        zeta_a, zeta_b, sign = zeta_b, zeta_a, -1.0
    points = peak_breakpoints(zeta_a, zeta_b, center=0.0, scale=0.5)
    value = adaptive_quad(
        reduced_potential, zeta_a, zeta_b, rel_tol=tol, abs_tol=tol * 1e-3, points=points,
        label="reduced 1D potential",
    )
    return sign * value


def _direct_radial_integrand(u: float, zeta2: float) -> float:
    return u * math.exp(-u * u) * (u * u - 2.0 * zeta2) / (u * u + zeta2) ** 2.5


def _contact_radial_integrand(u: float, zeta2: float) -> float:
    # integrated by parts: finite as zeta -> 0
    return -2.0 * u ** 3 * math.exp(-u * u) / (u * u + zeta2) ** 1.5


def transverse_average_reduced(zeta: float, tol: float = 1e-10) -> float:
    """Brute-force transverse average of the 3D potential, in reduced units.

    Both transverse coordinates carry Gaussian weights of width w; their difference is
    Gaussian with width sqrt(2) w, which reduces the 4D average to one radial integral
    over u = rho / (sqrt(2) w). See PHYSICS_NOTES.md.
    """
    zeta2 = float(zeta) ** 2
    a = abs(float(zeta))
    # the direct form diverges at contact; below CONTACT_SWITCH use its by-parts twin
    integrand = _contact_radial_integrand if a < CONTACT_SWITCH else _direct_radial_integrand
    cut = max(a, CONTACT_SWITCH)
    head = adaptive_quad(lambda u: integrand(u, zeta2), 0.0, cut, rel_tol=tol,
                         label="transverse average (core)")
    tail = adaptive_quad(lambda u: integrand(u, zeta2), cut, cut + RADIAL_CUTOFF, rel_tol=tol,
                         abs_tol=tol * 1e-3 * abs(head), label="transverse average (tail)")
    return head + tail


def transverse_average_oracle(coupling: DdiCoupling, w: float, z: float, tol: float = 1e-10) -> float:
    """Ground-truth Delta(z) in rad/s by direct numerical transverse averaging."""
    check_tolerance(tol, high=1e-2)
    pot = Potential1D(coupling, w)
    if coupling.coefficient == 0.0:
        return 0.0
    return pot.reduced_unit * transverse_average_reduced(pot.zeta(z), tol=tol)


def potential_fwhm() -> float:
    """Full width at half maximum of |f| in zeta units (about 0.65)."""
    half = 0.5 * SQRT_PI
    root = brentq(lambda x: abs(reduced_potential(x)) - half, 0.0, 2.0, xtol=1e-14, rtol=1e-14)
    return 2.0 * root


def curve_fwhm(zeta: np.ndarray, values: np.ndarray) -> float:
    """FWHM of |values| on a sampled curve by linear interpolation at the half level."""
    zeta = np.asarray(zeta, dtype=float)
    mag = np.abs(np.asarray(values, dtype=float))
    if zeta.size < 3:
        raise InvalidParameter("Need at least three samples to measure a width")
    i_peak = int(np.argmax(mag))
    half = 0.5 * mag[i_peak]

    def crossing(indices) -> float:
        prev = i_peak
        for i in indices:
            if mag[i] <= half:
                frac = (mag[prev] - half) / (mag[prev] - mag[i])
                return zeta[prev] + frac * (zeta[i] - zeta[prev])
            prev = i
        raise InvalidParameter("Curve does not fall to half maximum inside the sampled range")

    right = crossing(range(i_peak + 1, zeta.size))
    left = crossing(range(i_peak - 1, -1, -1))
    return right - left


def potential_curve(zeta_min: float, zeta_max: float, points: int) -> Tuple[np.ndarray, np.ndarray]:
    """Sampled (zeta, f(zeta)) curve in reduced units."""
    if points < 3:
        raise InvalidParameter(f"Need at least 3 points, got {points!r}")
    if not zeta_max > zeta_min:
        raise InvalidParameter(f"zeta_max must exceed zeta_min, got [{zeta_min!r}, {zeta_max!r}]")
    zeta = np.linspace(zeta_min, zeta_max, points)
    return zeta, reduced_potential(zeta)


def pair_coupling(pair: "ChannelPair", first: int, second: int) -> DdiCoupling:
    """C_ll' between the Rydberg levels of channels ``first`` and ``second`` of a pair."""
    return coupling_between(pair[first].rydberg_state, pair[second].rydberg_state)
