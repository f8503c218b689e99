from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple


@dataclass(frozen=True)
class HomodyneOutcome:
    """Predicted single-port homodyne reading for a signal holding ``photon_n`` photons."""
    photon_n: int
    signal: float          # s, units of detector counts ~ |alpha_1|^2
    uncertainty: float     # delta s = sqrt(2 s)
    gap: Optional[float] = None        # s(n) - s(n-1)
    required_gap: Optional[float] = None   # (delta s(n) + delta s(n-1)) / 2
    distinguishable: Optional[bool] = None  # from n - 1; None for n = 0


@dataclass(frozen=True)
class DistinguishabilityVerdict:
    alpha_sq: float
    phi12: float
    n_max: int
    outcomes: Tuple[HomodyneOutcome, ...]
    phase_wrap_ok: bool    # phi12 n_max <= pi

    @property
    def feasible(self) -> bool:
        return self.phase_wrap_ok and all(o.distinguishable for o in self.outcomes[1:])

    @property
    def worst_gap_margin(self) -> float:
        """min over n of gap - required gap."""
        return min(o.gap - o.required_gap for o in self.outcomes[1:])
