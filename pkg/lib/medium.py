"""EIT parameters of the atom-filled waveguide: density, absorption, slow light, bandwidth."""
from __future__ import annotations

import logging
import math
from typing import TYPE_CHECKING

from data.constants import CODATA2018
from lib.errors import ComputedVelocityExceedsC, InvalidParameter

if TYPE_CHECKING:
    from classes.eit_channel import EitChannel, Transition
    from classes.waveguide import AtomicEnsemble

logger = logging.getLogger(__name__)


def effective_density(ensemble: "AtomicEnsemble") -> float:
    """rho = N / [pi (w_a^2 + w_f^2) L], m^-3."""
    g = ensemble.geometry
    return ensemble.atom_count / (math.pi * (g.atom_width ** 2 + g.field_width ** 2) * g.length)


def absorption_cross_section(wavelength: float) -> float:
    return 3.0 * wavelength ** 2 / (2.0 * math.pi)


def absorption_coefficient(transition: "Transition", density: float) -> float:
    """kappa = (3 lambda^2 / 2 pi) rho, m^-1."""
    if density < 0:
        raise InvalidParameter(f"Density must be >= 0, got {density!r}")
    return absorption_cross_section(transition.wavelength) * density


def group_velocity(rabi: float, kappa: float, gamma_ge: float) -> float:
    """v = 2 Omega^2 / (kappa gamma_ge)."""
    if kappa <= 0 or gamma_ge <= 0:
        raise InvalidParameter(f"kappa and gamma_ge must be > 0, got {kappa!r}, {gamma_ge!r}")
    v = 2.0 * rabi ** 2 / (kappa * gamma_ge)
    if not v < CODATA2018.c_light:
        raise ComputedVelocityExceedsC(
            f"Group velocity {v:.6g} m/s is not below c: Omega={rabi!r}, kappa={kappa!r}, gamma_ge={gamma_ge!r}"
        )
    return v


def mixing_angle_sin2(v: float) -> float:
    """sin^2(theta) = 1 - v/c from v = c cos^2(theta)."""
    if not (0 < v <= CODATA2018.c_light):
        raise InvalidParameter(f"Velocity must lie in (0, c], got {v!r}")
    return 1.0 - v / CODATA2018.c_light


def eit_bandwidth(rabi: float, gamma_ge: float, optical_depth: float) -> float:
    """delta_omega = Omega^2 / (gamma_ge sqrt(kappa L)), rad/s."""
    if optical_depth <= 0:
        raise InvalidParameter(f"Optical depth must be > 0, got {optical_depth!r}")
    return rabi ** 2 / (gamma_ge * math.sqrt(optical_depth))


def mixing_angle_sin2_from_coupling(g: float, atom_count: float, rabi: float,
                                    effective_width: float, atom_width: float) -> float:
    """sin^2(theta) from tan^2(theta) = (g^2 N / Omega^2) (w / w_a)^2."""
    if rabi <= 0 or atom_width <= 0:
        raise InvalidParameter("Omega and w_a must be > 0")
    tan2 = (g ** 2 * atom_count / rabi ** 2) * (effective_width / atom_width) ** 2
    return tan2 / (1.0 + tan2)


def check_mixing_consistency(channel: "EitChannel", g: float, rel_tol: float = 1e-3) -> bool:
    """Whether the coupling-constant route to theta agrees with the group-velocity route."""
    ens = channel.ensemble
    via_g = mixing_angle_sin2_from_coupling(
        g, ens.atom_count, channel.control_rabi, ens.geometry.effective_width, ens.geometry.atom_width
    )
    # compare cos^2 = v/c: sin^2 is ~1 for slow light and hides the disagreement
    cos2_g = 1.0 - via_g
    cos2_v = channel.group_velocity / CODATA2018.c_light
    agree = math.isclose(cos2_g, cos2_v, rel_tol=rel_tol)
    if not agree:
        logger.warning("Channel %d: cos^2(theta) from g is %.6g, from v is %.6g", channel.label, cos2_g, cos2_v)
    return agree
