from __future__ import annotations

import math
from dataclasses import dataclass

from lib.errors import InvalidParameter
from lib.medium import effective_density


@dataclass(frozen=True)
class WaveguideGeometry:
    length: float         # L, m
    field_width: float    # w_f, m
    atom_width: float     # w_a, m

    def __post_init__(self) -> None:
        for name in ("length", "field_width", "atom_width"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidParameter(f"{name} must be > 0, got {value!r}")
        if self.atom_width > self.field_width:
            raise InvalidParameter(
                f"Atom cloud width {self.atom_width!r} m exceeds the field width {self.field_width!r} m"
            )

    @property
    def effective_width(self) -> float:
        """w = w_a w_f / sqrt(w_a^2 + w_f^2)"""
        return self.atom_width * self.field_width / math.hypot(self.atom_width, self.field_width)


@dataclass(frozen=True)
class AtomicEnsemble:
    atom_count: float
    geometry: WaveguideGeometry

    def __post_init__(self) -> None:
        if not self.atom_count > 0:
            raise InvalidParameter(f"Atom number must be > 0, got {self.atom_count!r}")

    @property
    def effective_density(self) -> float:
        return effective_density(self)
