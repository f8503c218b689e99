"""Homodyne statistics of the QND photon-number measurement with a coherent probe."""
from __future__ import annotations

import logging
import math

from scipy.optimize import bisect

from classes.homodyne import DistinguishabilityVerdict, HomodyneOutcome
from lib.errors import InvalidParameter, PhaseWrapInfeasible

logger = logging.getLogger(__name__)

_WRAP_SLACK = 1e-12


def _check_photon_number(n) -> int:
    if int(n) != n or n < 0:
        raise InvalidParameter(f"Photon number must be a non-negative integer, got {n!r}")
    return int(n)


def homodyne_signal(alpha_sq: float, phi12: float, n: int) -> HomodyneOutcome:
    """s(n) = 4 |alpha|^2 sin^2(phi12 n / 2) with delta s = sqrt(2 s)."""
    if not alpha_sq > 0:
        raise InvalidParameter(f"|alpha|^2 must be > 0, got {alpha_sq!r}")
    n = _check_photon_number(n)
    s = 4.0 * alpha_sq * math.sin(0.5 * phi12 * n) ** 2
    return HomodyneOutcome(n, s, math.sqrt(2.0 * s))


def phase_wrap_ok(phi12: float, n_max: int) -> bool:
    return phi12 * n_max <= math.pi * (1.0 + _WRAP_SLACK)


def distinguishability(alpha_sq: float, phi12: float, n_max: int) -> DistinguishabilityVerdict:
    """Whether photon numbers 0..n_max give homodyne readings that are resolved pairwise.

    Neighbours n - 1 and n are resolved when s(n) - s(n-1) exceeds the mean of their
    uncertainties; the phase must also not wrap, phi12 n_max <= pi.
    """
    if int(n_max) != n_max or n_max < 1:
        raise InvalidParameter(f"n_max must be an integer >= 1, got {n_max!r}")
    outcomes = [homodyne_signal(alpha_sq, phi12, 0)]
    for n in range(1, int(n_max) + 1):
        cur, prev = homodyne_signal(alpha_sq, phi12, n), outcomes[-1]
        gap = cur.signal - prev.signal
        need = 0.5 * (cur.uncertainty + prev.uncertainty)
        outcomes.append(HomodyneOutcome(n, cur.signal, cur.uncertainty, gap, need, gap > need))
    return DistinguishabilityVerdict(alpha_sq, phi12, int(n_max), tuple(outcomes), phase_wrap_ok(phi12, n_max))


def required_probe_strength(phi12: float, n_max: int, rel_tol: float = 1e-6) -> float:
    """Smallest |alpha|^2 for which photon numbers up to n_max are distinguishable."""
    if not phi12 > 0:
        raise InvalidParameter(f"phi12 must be > 0, got {phi12!r}")
    if not phase_wrap_ok(phi12, n_max):
        raise PhaseWrapInfeasible(
            f"phi12 n_max = {phi12 * n_max:.6g} exceeds pi; photon numbers up to {n_max} alias"
        )

    # gaps grow like |alpha|^2 and uncertainties like |alpha|; dividing by |alpha| gives a
    # margin that is negative at zero and increasing
    def margin(alpha_sq: float) -> float:
        return distinguishability(alpha_sq, phi12, n_max).worst_gap_margin / math.sqrt(alpha_sq)

    lo, hi = 1e-12, 1.0
    while margin(hi) <= 0.0:
        lo, hi = hi, 2.0 * hi
    root = bisect(margin, lo, hi, xtol=1e-15, rtol=rel_tol)
    # the gap inequality is strict: step until the root side is feasible
    while not distinguishability(root, phi12, n_max).feasible:
        root *= 1.0 + rel_tol
    logger.debug("required |alpha|^2 for phi12=%.6g, n_max=%d: %.9g", phi12, n_max, root)
    return root
