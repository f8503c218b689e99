from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple, Union

import numpy as np
from scipy.special import erf

from lib.errors import InvalidParameter
from lib.quadrature import adaptive_quad

NORMALIZATION_TOL = 1e-6
BOUNDARY_TOL = 1e-6
_PEAK_SAMPLES = 8193

Envelope = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Fock:
    n: int

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 0:
            raise InvalidParameter(f"Fock photon number must be a non-negative integer, got {self.n!r}")

    @property
    def mean_photon_number(self) -> float:
        return float(self.n)


@dataclass(frozen=True)
class Coherent:
    alpha0: complex   # peak amplitude alpha(0)

    @property
    def alpha_sq(self) -> float:
        return abs(self.alpha0) ** 2

    @property
    def mean_photon_number(self) -> float:
        return self.alpha_sq


PhotonContent = Union[Fock, Coherent]


@dataclass(frozen=True)
class PulseSpec:
    """A polariton pulse: longitudinal envelope on [0, L], duration and photon content.

    The envelope is normalised as (1/L) int_0^L |f|^2 dz = 1 and must vanish (below
    BOUNDARY_TOL of its peak) at both ends of the medium.
    """
    envelope: Envelope = field(compare=False, repr=False)
    duration: float       # T, s
    center: float         # z0, m (envelope coordinate)
    medium_length: float  # L, m
    content: PhotonContent
    shape: str = "custom"
    knots: Tuple[float, ...] = ()     # envelope kinks or peaks, handed to quadrature
    peak_intensity: float = field(init=False, compare=False)   # max |f|^2

    def __post_init__(self) -> None:
        L = self.medium_length
        if not (L > 0 and self.duration > 0):
            raise InvalidParameter(f"Medium length and duration must be > 0, got {L!r}, {self.duration!r}")
        if not (0.0 <= self.center <= L):
            raise InvalidParameter(f"Pulse centre {self.center!r} m lies outside [0, {L!r}] m")
        grid = np.union1d(np.linspace(0.0, L, _PEAK_SAMPLES), [self.center, *self.knots])
        grid = grid[(grid >= 0.0) & (grid <= L)]
        mag = np.abs(self.amplitude(grid))
        peak = float(mag.max())
        if not peak > 0:
            raise InvalidParameter("Envelope vanishes on [0, L]")
        edges = np.abs(self.amplitude(np.array([0.0, L])))
        if edges.max() >= BOUNDARY_TOL * peak:
            raise InvalidParameter(
                f"Envelope does not fit in [0, L]: |f| at the ends is {edges.max() / peak:.3g} of its peak"
            )
        norm = self.normalization()
        if abs(norm - 1.0) > NORMALIZATION_TOL:
            raise InvalidParameter(f"Envelope normalisation (1/L) int |f|^2 = {norm!r}, expected 1")
        object.__setattr__(self, "peak_intensity", peak ** 2)

    def amplitude(self, z) -> np.ndarray:
        return np.asarray(self.envelope(np.asarray(z, dtype=float)), dtype=complex)

    def intensity(self, z) -> np.ndarray:
        return np.abs(self.amplitude(z)) ** 2

    def normalization(self, shift: float = 0.0) -> float:
        """(1/L) int |f(z - shift)|^2 dz over the translated window [shift, L + shift]."""
        L = self.medium_length
        pts = sorted({p + shift for p in (self.center, *self.knots) if 0.0 < p < L})
        value = adaptive_quad(
            lambda z: float(self.intensity(z - shift)), shift, L + shift, rel_tol=1e-10, abs_tol=1e-12 * L,
            points=pts, label="envelope normalisation",
        )
        return value / L

    @property
    def mean_photon_number(self) -> float:
        return self.content.mean_photon_number

    @property
    def max_mean_intensity(self) -> float:
        """max_z <I(z)> = n max |f|^2 (|alpha|^2 max |f|^2 for a coherent pulse)."""
        return self.mean_photon_number * self.peak_intensity

    # ---- envelope families ----
    @classmethod
    def gaussian(cls, medium_length: float, duration: float, velocity: float,
                 content: PhotonContent, center: Optional[float] = None) -> "PulseSpec":
        """f(z) = A exp(-(z - z0)^2 / (2 sigma^2)) with sigma = T v / 2."""
        L = medium_length
        z0 = 0.5 * L if center is None else center
        sigma = 0.5 * duration * velocity
        if not sigma > 0:
            raise InvalidParameter(f"Gaussian width must be > 0, got {sigma!r}")
        # int_0^L exp(-(z-z0)^2/sigma^2) dz
        mass = 0.5 * sigma * math.sqrt(math.pi) * (erf((L - z0) / sigma) + erf(z0 / sigma))
        amp = math.sqrt(L / mass)

        def envelope(z):
            return amp * np.exp(-((z - z0) ** 2) / (2.0 * sigma ** 2))

        return cls(envelope, duration, z0, L, content, shape="gaussian")

    @classmethod
    def tukey(cls, medium_length: float, duration: float, velocity: float,
              content: PhotonContent, center: Optional[float] = None, taper: float = 0.2) -> "PulseSpec":
        """Flat top with raised-cosine edges over a support of length T v.

        ``taper`` is the fraction of the support spent in the two edges; 1 gives a Hann pulse.
        """
        L = medium_length
        z0 = 0.5 * L if center is None else center
        if not (0.0 < taper <= 1.0):
            raise InvalidParameter(f"Taper fraction must lie in (0, 1], got {taper!r}")
        support = duration * velocity
        half = 0.5 * support
        flat = 0.5 * support * (1.0 - taper)
        edge = half - flat
        # flat part + two edges of (3/8) edge each
        amp = math.sqrt(L / (support * (1.0 - 5.0 * taper / 8.0)))

        def envelope(z):
            x = np.abs(z - z0)
            ramp = np.clip((x - flat) / edge, 0.0, 1.0)
            core = 0.5 * (1.0 + np.cos(np.pi * ramp))
            return amp * np.where(x <= half, core, 0.0)

        knots = (z0 - half, z0 - flat, z0, z0 + flat, z0 + half)
        return cls(envelope, duration, z0, L, content, shape="tukey", knots=knots)
