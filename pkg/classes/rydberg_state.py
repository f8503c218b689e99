from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from data.constants import CODATA2018, dipole_from_ea0
from lib.errors import InvalidParameter, InvalidQuantumNumbers


@dataclass(frozen=True)
class RydbergState:
    """A DDI-active Rydberg level in a static orienting field.

    Either the quantum numbers (n, q, m) or an explicit dipole moment must be given;
    with quantum numbers the permanent dipole is (3/2) n q e a0.
    """
    principal_n: Optional[int] = None
    parabolic_q: Optional[int] = None
    magnetic_m: int = 0
    explicit_dipole: Optional[float] = None   # C m

    def __post_init__(self) -> None:
        if self.principal_n is None and self.parabolic_q is None:
            if self.explicit_dipole is None:
                raise InvalidParameter("RydbergState needs quantum numbers or an explicit dipole moment")
        else:
            n, q, m = self.principal_n, self.parabolic_q, self.magnetic_m
            if n is None or q is None:
                raise InvalidQuantumNumbers(f"Both n and q are required, got n={n!r}, q={q!r}")
            if n < 1:
                raise InvalidQuantumNumbers(f"Principal quantum number must be >= 1, got {n!r}")
            if not (0 <= q <= n - 1):
                raise InvalidQuantumNumbers(f"Parabolic q must satisfy 0 <= q <= n-1, got q={q!r} for n={n!r}")
            if abs(m) >= n:
                raise InvalidQuantumNumbers(f"Magnetic m must satisfy |m| < n, got m={m!r} for n={n!r}")
        if self.explicit_dipole is not None and self.explicit_dipole < 0:
            raise InvalidParameter(f"Dipole moment must be >= 0, got {self.explicit_dipole!r}")

    @classmethod
    def from_ea0(cls, value: float) -> "RydbergState":
        return cls(explicit_dipole=dipole_from_ea0(value))

    @property
    def dipole_moment(self) -> float:
        if self.explicit_dipole is not None:
            return self.explicit_dipole
        return 1.5 * self.principal_n * self.parabolic_q * CODATA2018.ea0

    @property
    def dipole_ea0(self) -> float:
        return self.dipole_moment / CODATA2018.ea0

    def __str__(self) -> str:
        if self.principal_n is None:
            return f"d({self.dipole_ea0:.6g} ea0)"
        return f"d(n={self.principal_n}, q={self.parabolic_q}, m={self.magnetic_m})"
