"""
Physical constants (CODATA 2018, SI units) and the unit converters used at
API boundaries. Everything inside the package works in SI base units.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from lib.errors import InvalidParameter


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float        # J s
    epsilon0: float    # F/m
    e_charge: float    # C
    a0: float          # m (Bohr radius)
    c_light: float     # m/s

    def __post_init__(self) -> None:
        for name in ("hbar", "epsilon0", "e_charge", "a0", "c_light"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidParameter(f"Constant {name!r} must be positive, got {value!r}")

    @property
    def ea0(self) -> float:
        """Atomic unit of electric dipole moment, C m."""
        return self.e_charge * self.a0


CODATA2018 = PhysicalConstants(
    hbar=1.054571817e-34,
    epsilon0=8.8541878128e-12,
    e_charge=1.602176634e-19,
    a0=5.29177210903e-11,
    c_light=299792458.0,
)


def _non_negative(value: float, what: str) -> float:
    value = float(value)
    if not math.isfinite(value) or value < 0:
        raise InvalidParameter(f"{what} must be a finite non-negative number, got {value!r}")
    return value


def dipole_from_ea0(value: float, constants: PhysicalConstants = CODATA2018) -> float:
    """Dipole moment in units of e*a0 -> C m."""
    return _non_negative(value, "dipole moment (e a0)") * constants.e_charge * constants.a0


def length_from_um(value: float) -> float:
    return _non_negative(value, "length (um)") * 1e-6


def length_from_nm(value: float) -> float:
    return _non_negative(value, "length (nm)") * 1e-9


def length_from_cm(value: float) -> float:
    return _non_negative(value, "length (cm)") * 1e-2


def time_from_us(value: float) -> float:
    return _non_negative(value, "time (us)") * 1e-6


def angular_freq_from_rad_s(value: float) -> float:
    # already SI; kept so every boundary value goes through a checked converter
    return _non_negative(value, "angular frequency (rad/s)")


def density_to_per_cm3(value: float) -> float:
    return float(value) * 1e-6
