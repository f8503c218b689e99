from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from classes.pulse_spec import PulseSpec


class PhaseKernel(str, Enum):
    EXACT_QUADRATURE = "exact_quadrature"
    DELTA_APPROXIMATION = "delta_approximation"
    CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class PhaseShiftResult:
    phi: float                 # rad
    uniformity_spread: float   # max - min over the sampled final coordinates, rad
    kernel: PhaseKernel


@dataclass(frozen=True)
class TwoPhotonState:
    """F12(z1, z2, t) on a lab-frame grid; axis 0 is z1, axis 1 is z2."""
    pulse1: PulseSpec
    pulse2: PulseSpec
    time: float
    z1: np.ndarray = field(repr=False, compare=False)
    z2: np.ndarray = field(repr=False, compare=False)
    wavefunction: np.ndarray = field(repr=False, compare=False)
    phase: np.ndarray = field(repr=False, compare=False)
    valid: np.ndarray = field(repr=False, compare=False)

    @property
    def modulus(self) -> np.ndarray:
        return np.abs(self.wavefunction)

    def phase_spread(self, region: np.ndarray = None) -> float:
        """max - min of the phase over ``region`` (boolean mask; defaults to valid points)."""
        mask = self.valid if region is None else region
        values = self.phase[mask]
        if values.size == 0:
            return 0.0
        return float(values.max() - values.min())

    def rows(self):
        """(z1, z2, Re F, Im F, phi, valid) per grid point, z2 varying fastest."""
        for i, a in enumerate(self.z1):
            for j, b in enumerate(self.z2):
                f = self.wavefunction[i, j]
                yield a, b, f.real, f.imag, self.phase[i, j], bool(self.valid[i, j])
