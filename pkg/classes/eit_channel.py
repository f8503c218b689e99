from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from classes.rydberg_state import RydbergState
from classes.waveguide import AtomicEnsemble
from data.constants import CODATA2018
from lib.errors import InvalidParameter
from lib.medium import (
    absorption_coefficient,
    absorption_cross_section,
    eit_bandwidth,
    group_velocity,
    mixing_angle_sin2,
)


@dataclass(frozen=True)
class Transition:
    wavelength: float      # m
    gamma_ge: float        # transversal relaxation rate, s^-1

    def __post_init__(self) -> None:
        if not self.wavelength > 0:
            raise InvalidParameter(f"Wavelength must be > 0, got {self.wavelength!r}")
        if not self.gamma_ge > 0:
            raise InvalidParameter(f"gamma_ge must be > 0, got {self.gamma_ge!r}")

    @property
    def absorption_cross_section(self) -> float:
        return absorption_cross_section(self.wavelength)


@dataclass(frozen=True)
class EitChannel:
    """One quantum field, its probe transition, control field and Rydberg level.

    Derived EIT quantities are computed once at construction.
    """
    label: int
    transition: Transition
    control_rabi: float                       # Omega, rad/s
    rydberg_state: RydbergState
    ensemble: AtomicEnsemble
    gamma_gd: Optional[float] = None          # Rydberg coherence decay, s^-1; no default

    absorption_kappa: float = field(init=False)
    optical_depth: float = field(init=False)
    group_velocity: float = field(init=False)
    sin2_theta: float = field(init=False)
    eit_bandwidth: float = field(init=False)

    def __post_init__(self) -> None:
        if self.label not in (1, 2):
            raise InvalidParameter(f"Channel label must be 1 or 2, got {self.label!r}")
        if not self.control_rabi > 0:
            raise InvalidParameter(f"Control Rabi frequency must be > 0, got {self.control_rabi!r}")
        if self.gamma_gd is not None and not self.gamma_gd > 0:
            raise InvalidParameter(f"gamma_gd must be > 0 when given, got {self.gamma_gd!r}")
        kappa = absorption_coefficient(self.transition, self.ensemble.effective_density)
        depth = kappa * self.ensemble.geometry.length
        v = group_velocity(self.control_rabi, kappa, self.transition.gamma_ge)
        object.__setattr__(self, "absorption_kappa", kappa)
        object.__setattr__(self, "optical_depth", depth)
        object.__setattr__(self, "group_velocity", v)
        object.__setattr__(self, "sin2_theta", mixing_angle_sin2(v))
        object.__setattr__(self, "eit_bandwidth", eit_bandwidth(self.control_rabi, self.transition.gamma_ge, depth))

    @property
    def transit_time(self) -> float:
        """t_out = L / v"""
        return self.ensemble.geometry.length / self.group_velocity


@dataclass(frozen=True)
class ChannelPair:
    """The right-moving channel 1 and the left-moving channel 2 in one medium."""
    first: EitChannel
    second: EitChannel

    def __post_init__(self) -> None:
        if (self.first.label, self.second.label) != (1, 2):
            raise InvalidParameter("ChannelPair expects channels labelled 1 and 2, in that order")
        if self.first.ensemble != self.second.ensemble:
            raise InvalidParameter("Both channels must share the same atomic ensemble")

    def __getitem__(self, label: int) -> EitChannel:
        if label == 1:
            return self.first
        if label == 2:
            return self.second
        raise KeyError(f"No channel {label!r}")

    @property
    def ensemble(self) -> AtomicEnsemble:
        return self.first.ensemble

    @property
    def length(self) -> float:
        return self.ensemble.geometry.length

    @property
    def effective_width(self) -> float:
        return self.ensemble.geometry.effective_width

    @property
    def mean_velocity(self) -> float:
        """(v1 + v2)/2: half the closing speed of the counter-propagating pulses."""
        return 0.5 * (self.first.group_velocity + self.second.group_velocity)

    @property
    def transit_time(self) -> float:
        return self.length / self.mean_velocity

    def check_equal_mixing(self, rel_tol: float = 1e-3) -> bool:
        """True if theta_1 and theta_2 agree closely enough for single-theta formulas.

        Compared through cos^2(theta) = v/c, which carries the difference.
        """
        return math.isclose(
            self.first.group_velocity / CODATA2018.c_light,
            self.second.group_velocity / CODATA2018.c_light,
            rel_tol=rel_tol,
        )
