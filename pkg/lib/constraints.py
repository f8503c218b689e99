"""
Operating conditions of the dissipation-free polariton solution, reported with margins.

Every report carries the same seven entries:

1. pulse bandwidth inside the EIT window      (kappa L)^-1/2  << T v / L
2. pulse fits the medium                       T v / L          <  1
3. Rydberg coherence survives the transit      t_out gamma_gd   << 1
4. DDI shifts stay inside the EIT window       2 C s s' max<I'> / (hbar w^2 L) < delta_omega
5. phase per photon bounded by optical depth   phi_ll' n_l'     <  sqrt(kappa_l L) / 4
6. photon number bounded by optical depth      n_l < min(sqrt(kappa_l' L)/(4 phi_ll'), sqrt(kappa_l L)/(4 phi_ll) + 1)
7. coherent probe self-interaction             2 C11 |alpha|^2  <  C12
"""
from __future__ import annotations

import logging
import math
from typing import Dict, List, Mapping, Optional, Tuple

from classes.constraint_report import (
    ConstraintEntry,
    ConstraintMember,
    ConstraintReport,
    Status,
    Strictness,
)
from classes.ddi_potential import DdiCoupling
from classes.eit_channel import ChannelPair
from classes.pulse_spec import Coherent, PulseSpec
from data.constants import CODATA2018
from lib.ddi import pair_coupling
from lib.errors import InvalidParameter, MissingInput
from lib.propagation import pair_uniform_phase

logger = logging.getLogger(__name__)

Couplings = Mapping[Tuple[int, int], DdiCoupling]

PAIRS = ((1, 1), (1, 2), (2, 1), (2, 2))

ENTRY_NAMES = {
    1: "pulse bandwidth within EIT window",
    2: "pulse fits medium",
    3: "Rydberg coherence over transit",
    4: "DDI shift within EIT window",
    5: "phase bounded by optical depth",
    6: "photon number bound",
    7: "probe self-interaction below cross",
}

SIGNAL_SELF_EXCLUDED = "signal self-interaction excluded"


def pair_couplings(pair: ChannelPair) -> Dict[Tuple[int, int], DdiCoupling]:
    return {(l, lp): pair_coupling(pair, l, lp) for l, lp in PAIRS}


def photon_number_bound(optical_depth: float, phi: float, offset: float = 0.0) -> float:
    """Largest integer n with n < sqrt(kappa L) / (4 phi) + offset; math.inf when phi is 0."""
    if optical_depth <= 0:
        raise InvalidParameter(f"Optical depth must be > 0, got {optical_depth!r}")
    if phi < 0:
        raise InvalidParameter(f"Phase must be >= 0, got {phi!r}")
    if phi == 0.0:
        return math.inf
    bound = math.sqrt(optical_depth) / (4.0 * phi) + offset
    return math.ceil(bound) - 1


def _counted_photons(pulse: PulseSpec, coherent_sigmas: float) -> float:
    """Photon number entering the phase and photon bounds."""
    content = pulse.content
    if isinstance(content, Coherent):
        return math.ceil(content.alpha_sq) + coherent_sigmas * math.sqrt(content.alpha_sq)
    return float(content.n)


def _included(l: int, lp: int, signal_self_interaction: bool) -> bool:
    return signal_self_interaction or (l, lp) != (2, 2)


def _phases(pair: ChannelPair, couplings: Couplings) -> Dict[Tuple[int, int], float]:
    return {(l, lp): pair_uniform_phase(pair, l, lp, coupling=couplings[(l, lp)]) for l, lp in PAIRS}


def _entry(index: int, strictness: Strictness, members: List[ConstraintMember],
           strict_margin: float, plain_margin: float, note: str = "") -> ConstraintEntry:
    threshold = strict_margin if strictness is Strictness.STRICT else plain_margin
    worst = min(m.margin for m in members)
    ok = worst >= threshold if strictness is Strictness.STRICT else worst > threshold
    status = Status.SATISFIED if ok else Status.VIOLATED
    entry = ConstraintEntry(index, ENTRY_NAMES[index], strictness, threshold, status, tuple(members), note)
    if not ok:
        logger.warning("Constraint %d (%s) violated: margin %.4g, needs %s %g",
                       index, entry.name, worst, ">=" if strictness is Strictness.STRICT else ">", threshold)
    return entry


def _gamma_gd(pair: ChannelPair, label: int) -> float:
    value = pair[label].gamma_gd
    if value is None:
        raise MissingInput(f"channel{label}.gamma_gd_per_s")
    return value


def check_all(pair: ChannelPair, pulse1: PulseSpec, pulse2: PulseSpec,
              couplings: Optional[Couplings] = None, *,
              strict_margin: float = 10.0, plain_margin: float = 1.0,
              coherent_sigmas: float = 2.0, signal_self_interaction: bool = True) -> ConstraintReport:
    """Evaluate all seven operating conditions for a channel pair and its two pulses.

    ``couplings`` maps (l, l') to C_ll'; by default they follow from the channels' Rydberg
    levels. With ``signal_self_interaction`` false the (2, 2) terms are left out of entries
    4 to 6, as when only the signal photon number matters, and those entries carry a note
    saying so.
    """
    if not (strict_margin > 0 and plain_margin > 0):
        raise InvalidParameter("Constraint thresholds must be > 0")
    if coherent_sigmas < 0:
        raise InvalidParameter(f"coherent_sigmas must be >= 0, got {coherent_sigmas!r}")
    couplings = pair_couplings(pair) if couplings is None else couplings
    pulses = {1: pulse1, 2: pulse2}
    L = pair.length
    w = pair.effective_width
    phases = _phases(pair, couplings)
    counted = {l: _counted_photons(pulses[l], coherent_sigmas) for l in (1, 2)}
    depth = {l: pair[l].optical_depth for l in (1, 2)}

    def build(index: int, strictness: Strictness, members: List[ConstraintMember], note: str = "") -> ConstraintEntry:
        return _entry(index, strictness, members, strict_margin, plain_margin, note)

    excluded = "" if signal_self_interaction else SIGNAL_SELF_EXCLUDED

    entries = []

    # 1, 2: pulse length against optical depth and medium
    entries.append(build(1, Strictness.STRICT, [
        ConstraintMember(f"l={l}", depth[l] ** -0.5, pulses[l].duration * pair[l].group_velocity / L)
        for l in (1, 2)
    ]))
    entries.append(build(2, Strictness.PLAIN, [
        ConstraintMember(f"l={l}", pulses[l].duration * pair[l].group_velocity / L, 1.0)
        for l in (1, 2)
    ]))

    # 3: Rydberg dephasing during the transit
    try:
        entries.append(build(3, Strictness.STRICT, [
            ConstraintMember(f"l={l}", pair[l].transit_time * _gamma_gd(pair, l), 1.0) for l in (1, 2)
        ]))
    except MissingInput as exc:
        logger.warning("Constraint 3 indeterminate: %s", exc)
        entries.append(ConstraintEntry(3, ENTRY_NAMES[3], Strictness.STRICT, strict_margin,
                                       Status.INDETERMINATE, note=str(exc)))

    # 4: peak DDI shift against the EIT bandwidth
    members = []
    for l, lp in PAIRS:
        if not _included(l, lp, signal_self_interaction):
            continue
        s = pair[l].sin2_theta * pair[lp].sin2_theta
        shift = 2.0 * couplings[(l, lp)].coefficient * s / (CODATA2018.hbar * w ** 2 * L)
        members.append(ConstraintMember(f"l={l},l'={lp}", shift * pulses[lp].max_mean_intensity,
                                        pair[l].eit_bandwidth))
    entries.append(build(4, Strictness.PLAIN, members, excluded))

    # 5: accumulated phases against sqrt(kappa L)/4
    members = []
    for l, lp in PAIRS:
        if not _included(l, lp, signal_self_interaction):
            continue
        photons = counted[lp] if l != lp else max(counted[l] - 1.0, 0.0)
        members.append(ConstraintMember(f"l={l},l'={lp}", phases[(l, lp)] * photons,
                                        math.sqrt(depth[l]) / 4.0))
    entries.append(build(5, Strictness.PLAIN, members, excluded))

    # 6: photon numbers against the optical-depth bound
    members = []
    for l in (1, 2):
        lp = 3 - l
        bounds = [_ratio_bound(depth[lp], phases[(l, lp)])]
        if _included(l, l, signal_self_interaction):
            bounds.append(_ratio_bound(depth[l], phases[(l, l)]) + 1.0)
        members.append(ConstraintMember(f"l={l}", counted[l], min(bounds)))
    entries.append(build(6, Strictness.PLAIN, members, excluded))

    # 7: self-phase of a coherent probe
    probe = pulse1.content
    if isinstance(probe, Coherent):
        entries.append(build(7, Strictness.PLAIN, [ConstraintMember(
            "l=1", 2.0 * couplings[(1, 1)].coefficient * probe.alpha_sq, couplings[(1, 2)].coefficient
        )]))
    else:
        entries.append(ConstraintEntry(7, ENTRY_NAMES[7], Strictness.PLAIN, plain_margin,
                                       Status.NOT_APPLICABLE, note="probe is not a coherent pulse"))

    return ConstraintReport(tuple(entries))


def _ratio_bound(optical_depth: float, phi: float) -> float:
    """sqrt(kappa L) / (4 phi), infinite for phi = 0."""
    if phi == 0.0:
        return math.inf
    return math.sqrt(optical_depth) / (4.0 * phi)


def max_photon_number(pair: ChannelPair, couplings: Optional[Couplings] = None,
                      signal_self_interaction: bool = True) -> Dict[int, float]:
    """Per-pulse integer photon bound: the largest n strictly below both the cross and self bounds."""
    couplings = pair_couplings(pair) if couplings is None else couplings
    phases = _phases(pair, couplings)
    result = {}
    for l in (1, 2):
        lp = 3 - l
        bound = photon_number_bound(pair[lp].optical_depth, phases[(l, lp)])
        if _included(l, l, signal_self_interaction):
            bound = min(bound, photon_number_bound(pair[l].optical_depth, phases[(l, l)], offset=1.0))
        result[l] = bound
    return result


def to_rows(report: ConstraintReport) -> List[dict]:
    """One record per entry member, in entry order; entries without members get one record."""
    rows = []
    for entry in report:
        base = {"entry": entry.index, "name": entry.name, "strictness": entry.strictness.value,
                "threshold": entry.threshold, "status": entry.status.value}
        if not entry.members:
            rows.append({**base, "member": "", "lhs": math.nan, "rhs": math.nan, "margin": math.nan,
                         "worst": True, "note": entry.note})
            continue
        worst = entry.worst
        for m in entry.members:
            rows.append({**base, "member": m.label, "lhs": m.lhs, "rhs": m.rhs, "margin": m.margin,
                         "worst": m is worst, "note": entry.note})
    return rows
