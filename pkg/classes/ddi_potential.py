from __future__ import annotations

import math
from dataclasses import dataclass

from data.constants import CODATA2018
from lib.errors import InvalidParameter


@dataclass(frozen=True)
class DdiCoupling:
    """C = p_a p_b / (4 pi eps0) for a pair of permanent dipoles (C m each)."""
    dipole_a: float
    dipole_b: float

    def __post_init__(self) -> None:
        if self.dipole_a < 0 or self.dipole_b < 0:
            raise InvalidParameter(f"Dipole moments must be >= 0, got {self.dipole_a!r}, {self.dipole_b!r}")

    @property
    def coefficient(self) -> float:
        """J m^3"""
        return self.dipole_a * self.dipole_b / (4.0 * math.pi * CODATA2018.epsilon0)

    def scaled(self, factor: float) -> "DdiCoupling":
        """Coupling with C multiplied by ``factor`` (applied to the second dipole)."""
        return DdiCoupling(self.dipole_a, self.dipole_b * factor)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DdiCoupling):
            return NotImplemented
        return {self.dipole_a, self.dipole_b} == {other.dipole_a, other.dipole_b}

    def __hash__(self) -> int:
        return hash(frozenset((self.dipole_a, self.dipole_b)))


@dataclass(frozen=True)
class Potential1D:
    """Transversely averaged DDI kernel for Gaussian field/atom profiles of effective width w."""
    coupling: DdiCoupling
    effective_width: float   # m

    def __post_init__(self) -> None:
        if not self.effective_width > 0:
            raise InvalidParameter(f"Effective width must be > 0, got {self.effective_width!r}")

    @property
    def length_scale(self) -> float:
        """sqrt(2) w: z = length_scale * zeta."""
        return math.sqrt(2.0) * self.effective_width

    @property
    def reduced_unit(self) -> float:
        """2 C / (hbar (sqrt(2) w)^3), rad/s."""
        return 2.0 * self.coupling.coefficient / (CODATA2018.hbar * self.length_scale ** 3)

    def zeta(self, z):
        return z / self.length_scale
