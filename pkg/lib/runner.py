"""
Experiment drivers behind the CLI. Every numeric row names the operation that produced it
in its ``source`` column.
"""
from __future__ import annotations

import cmath
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from typing import Dict, List, Optional, Tuple

import numpy as np

from classes.constraint_report import ConstraintReport, Status, Strictness
from classes.pulse_spec import Fock
from classes.scenario import Experiment, ResultTable, RunResult, Scenario, table
from classes.two_photon_state import PhaseKernel
from data.constants import density_to_per_cm3
from data.paper_values import REPRODUCED, paper_values
from lib.constraints import check_all, max_photon_number
from lib.ddi import curve_fwhm, pair_coupling, potential_curve as sample_potential, potential_fwhm
from lib.errors import ConstraintFailure, InvalidParameter
from lib.propagation import (
    complete_pass_phase,
    finite_length_phase,
    pair_uniform_phase,
    phase_surface,
    probe_phase,
    self_phase_estimate,
)
from lib.qnd import distinguishability, required_probe_strength
from lib.scenario_loader import bundled_scenario, compile_scenario, sweep_values
from lib.settings import Settings

logger = logging.getLogger(__name__)

QUANTITY_COLUMNS = ("quantity", "value", "unit", "source")


def _tol(scenario: Scenario, settings: Settings) -> float:
    """The scenario's own tolerance unless the settings were overridden from the command line."""
    if settings.tol_override or scenario.quad_tol is None:
        return settings.quad_tol
    return scenario.quad_tol


def constraint_report(scenario: Scenario) -> Optional[ConstraintReport]:
    if not scenario.has_medium:
        return None
    o = scenario.constraints
    return check_all(
        scenario.pair, scenario.pulse1, scenario.pulse2,
        strict_margin=o.strict_margin, plain_margin=o.plain_margin,
        coherent_sigmas=o.coherent_sigmas, signal_self_interaction=o.signal_self_interaction,
    )


def enforce(report: Optional[ConstraintReport], strict: bool) -> None:
    """Raise ConstraintFailure in strict mode if any strict ("much less than") entry is violated."""
    if report is None:
        return
    failed = report.violated(Strictness.STRICT)
    if not failed:
        return
    names = ", ".join(f"{e.index} ({e.name}, margin {e.margin:.3g})" for e in failed)
    if strict:
        raise ConstraintFailure(f"Strict constraints violated: {names}")
    logger.warning("Continuing despite violated strict constraints: %s", names)


def medium_table(scenario: Scenario) -> ResultTable:
    pair = scenario.pair
    rows = [("rho_bar", density_to_per_cm3(pair.ensemble.effective_density), "cm^-3", "medium.effective_density")]
    for l in (1, 2):
        ch = pair[l]
        rows += [
            (f"kappa{l}_L", ch.optical_depth, "", "medium.absorption_coefficient"),
            (f"v{l}", ch.group_velocity, "m/s", "medium.group_velocity"),
            (f"sin2_theta{l}", ch.sin2_theta, "", "medium.mixing_angle_sin2"),
            (f"delta_omega{l}", ch.eit_bandwidth, "rad/s", "medium.eit_bandwidth"),
            (f"dipole{l}", ch.rydberg_state.dipole_ea0, "e a0", "ddi.rydberg_dipole"),
        ]
    rows.append(("effective_width", pair.effective_width, "m", "medium.effective_width"))
    rows.append(("equal_mixing", float(pair.check_equal_mixing()), "", "medium.check_equal_mixing"))
    return table("medium", QUANTITY_COLUMNS, rows)


def _bounds_rows(scenario: Scenario) -> List[tuple]:
    bounds = max_photon_number(scenario.pair,
                               signal_self_interaction=scenario.constraints.signal_self_interaction)
    return [(f"n_max_pulse{l}", float(bounds[l]), "photons", "constraints.max_photon_number") for l in (1, 2)]


def phase_gate(scenario: Scenario, settings: Settings) -> RunResult:
    tol = _tol(scenario, settings)
    pair = scenario.pair
    coupling = pair_coupling(pair, 1, 2)
    closed = complete_pass_phase(pair, PhaseKernel.CLOSED_FORM)
    exact = complete_pass_phase(pair, PhaseKernel.EXACT_QUADRATURE, quad_tol=tol)
    finite = finite_length_phase(coupling, pair.effective_width, pair.first.group_velocity,
                                 pair.first.sin2_theta, pair.length,
                                 v2=pair.second.group_velocity, sin2_theta2=pair.second.sin2_theta)
    phi = closed.phi
    rows = [
        ("phi12", phi, "rad", "propagation.uniform_phase"),
        ("phi12_finite_length", finite, "rad", "propagation.finite_length_phase"),
        ("phi12_exact", exact.phi, "rad", "propagation.accumulated_phase"),
        ("phi12_exact_spread", exact.uniformity_spread, "rad", "propagation.accumulated_phase"),
        ("phi12_over_pi", phi / math.pi, "", "propagation.uniform_phase"),
        # |1 + e^{i phi}| / 2 vanishes for an ideal CPHASE
        ("cphase_infidelity_proxy", abs(1.0 + cmath.exp(1j * phi)) / 2.0, "", "runner.phase_gate"),
        *_bounds_rows(scenario),
    ]
    truth = table("cphase_truth_table", ("m", "n", "phase_rad", "source"),
                  [(m, n, m * n * phi, "runner.phase_gate") for m in (0, 1) for n in (0, 1)])
    tables = [table("results", QUANTITY_COLUMNS, rows), truth, medium_table(scenario)]

    surface = None
    if scenario.surface_points:
        surface = phase_surface(scenario.pulse1, scenario.pulse2, pair, scenario.surface_points, quad_tol=tol)
        rows.append(("surface_phase_spread", surface.phase_spread(), "rad", "propagation.evolve_two_photon"))
        tables[0] = table("results", QUANTITY_COLUMNS, rows)
    return RunResult(scenario.name, Experiment.PHASE_GATE, constraint_report(scenario), tuple(tables), surface)


def qnd(scenario: Scenario, settings: Settings) -> RunResult:
    tol = _tol(scenario, settings)
    pair = scenario.pair
    probe, signal = scenario.pulse1, scenario.pulse2
    alpha_sq = probe.content.alpha_sq
    phi = pair_uniform_phase(pair)
    verdict = distinguishability(alpha_sq, phi, scenario.n_max)

    rows = [("phi12", phi, "rad", "propagation.uniform_phase")]
    # phase per signal photon
    one_photon = replace(signal, content=Fock(1))
    for kernel in (PhaseKernel.DELTA_APPROXIMATION, PhaseKernel.EXACT_QUADRATURE):
        ratio = probe_phase(probe, one_photon, pair, kernel=kernel, quad_tol=tol)
        rows.append((f"probe_phase_{kernel.value}", cmath.phase(ratio), "rad", "propagation.probe_phase"))
    rows += [
        ("probe_self_phase", self_phase_estimate(probe.content, pair_coupling(pair, 1, 1), pair.effective_width,
                                                 pair.first.group_velocity, pair.first.sin2_theta),
         "rad", "propagation.self_phase_estimate"),
        ("alpha_sq", alpha_sq, "", "scenario"),
        ("feasible", float(verdict.feasible), "", "qnd.distinguishability"),
        *_bounds_rows(scenario),
    ]
    try:
        rows.append(("required_alpha_sq", required_probe_strength(phi, scenario.n_max), "",
                     "qnd.required_probe_strength"))
    except InvalidParameter as exc:
        logger.warning("No probe strength resolves n <= %d: %s", scenario.n_max, exc)
        rows.append(("required_alpha_sq", math.nan, "", "qnd.required_probe_strength"))

    heralding = table(
        "heralding",
        ("n", "signal", "uncertainty", "gap", "required_gap", "distinguishable", "source"),
        [(o.photon_n, o.signal, o.uncertainty,
          math.nan if o.gap is None else o.gap,
          math.nan if o.required_gap is None else o.required_gap,
          "" if o.distinguishable is None else str(o.distinguishable).lower(),
          "qnd.homodyne_signal")
         for o in verdict.outcomes],
    )
    tables = (table("results", QUANTITY_COLUMNS, rows), heralding, medium_table(scenario))
    return RunResult(scenario.name, Experiment.QND, constraint_report(scenario), tables)


def potential_curve(zeta_min: float = -6.0, zeta_max: float = 6.0, points: int = 601,
                    name: str = "potential") -> RunResult:
    zeta, values = sample_potential(zeta_min, zeta_max, points)
    try:
        sampled_width = curve_fwhm(zeta, values)
    except InvalidParameter as exc:
        logger.warning("No sampled FWHM over zeta in [%g, %g]: %s", zeta_min, zeta_max, exc)
        sampled_width = math.nan
    rows = [
        ("minimum", float(values.min()), "reduced", "ddi.reduced_potential"),
        ("zeta_at_minimum", float(zeta[int(np.argmin(values))]), "", "ddi.reduced_potential"),
        ("fwhm_sampled", sampled_width, "", "ddi.curve_fwhm"),
        ("fwhm", potential_fwhm(), "", "ddi.potential_fwhm"),
    ]
    curve = table("potential", ("zeta", "delta_reduced", "source"),
                  [(z, f, "ddi.reduced_potential") for z, f in zip(zeta, values)])
    return RunResult(name, Experiment.POTENTIAL_CURVE, None,
                     (table("results", QUANTITY_COLUMNS, rows), curve), curve=(zeta, values))


def _sweep_point(args: Tuple[int, float, Dict, Settings]) -> Tuple:
    """One sweep point, compiled from plain values so it can run in a worker process."""
    index, value, values, settings = args
    scenario = compile_scenario(values)
    result = EXPERIMENTS[scenario.experiment](scenario, settings)
    report = result.report
    phi = result.table("results").lookup("phi12")
    feasible = result.table("results").lookup("feasible") if scenario.experiment is Experiment.QND else math.nan
    worst = min((e.margin for e in report if e.status in (Status.SATISFIED, Status.VIOLATED)), default=math.nan)
    ok = not report.violated()
    return index, value, phi, feasible, float(ok), worst


def sweep(scenario: Scenario, settings: Settings) -> RunResult:
    spec = scenario.sweep
    jobs = [(i, float(v), sweep_values(scenario, v), settings) for i, v in enumerate(spec.points())]
    workers = settings.max_workers or os.cpu_count() or 1
    logger.info("Sweeping %s over %d points with %d worker(s)", spec.parameter, len(jobs), workers)
    if workers == 1 or len(jobs) == 1:
        rows = [_sweep_point(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            # map yields in submission order
            rows = list(pool.map(_sweep_point, jobs))
    rows = [(*r, f"runner.{spec.experiment.value}") for r in sorted(rows)]
    out = table("sweep", ("index", spec.parameter, "phi12", "feasible", "constraints_ok", "worst_margin", "source"),
                rows)
    return RunResult(scenario.name, Experiment.SWEEP, constraint_report(scenario), (out,))


def _potential_from_scenario(scenario: Scenario, settings: Settings) -> RunResult:
    p = scenario.potential
    result = potential_curve(p.zeta_min, p.zeta_max, p.points, name=scenario.name)
    return RunResult(result.scenario_name, result.experiment, constraint_report(scenario),
                     result.tables, curve=result.curve)


EXPERIMENTS = {
    Experiment.PHASE_GATE: phase_gate,
    Experiment.QND: qnd,
    Experiment.POTENTIAL_CURVE: _potential_from_scenario,
    Experiment.SWEEP: sweep,
}


def run(scenario: Scenario, settings: Settings) -> RunResult:
    logger.info("Running %r (%s)", scenario.name, scenario.experiment.value)
    return EXPERIMENTS[scenario.experiment](scenario, settings)


def reproduce_paper(settings: Settings) -> RunResult:
    """Computed values next to the published ones, with relative deviations."""
    gate = run(bundled_scenario("paper_phase_gate"), settings)
    qnd_run = run(bundled_scenario("paper_qnd"), settings)
    medium = gate.table("medium")
    computed = {
        "rho_bar": (medium.lookup("rho_bar"), "medium.effective_density"),
        "kappa1_L": (medium.lookup("kappa1_L"), "medium.absorption_coefficient"),
        "kappa2_L": (medium.lookup("kappa2_L"), "medium.absorption_coefficient"),
        "v1": (medium.lookup("v1"), "medium.group_velocity"),
        "v2": (medium.lookup("v2"), "medium.group_velocity"),
        "delta_omega1": (medium.lookup("delta_omega1"), "medium.eit_bandwidth"),
        "delta_omega2": (medium.lookup("delta_omega2"), "medium.eit_bandwidth"),
        "phi12_gate": (gate.table("results").lookup("phi12"), "propagation.uniform_phase"),
        "phi12_qnd": (qnd_run.table("results").lookup("phi12"), "propagation.uniform_phase"),
        "qnd_feasible": (qnd_run.table("results").lookup("feasible"), "qnd.distinguishability"),
        "probe_self_interaction_margin": (qnd_run.report[7].margin, "constraints.check_all"),
    }
    rows = []
    for key in REPRODUCED:
        reference, unit, tolerance = paper_values[key]
        value, source = computed[key]
        deviation = (value - reference) / reference
        rows.append((key, value, reference, deviation, "true" if abs(deviation) <= tolerance else "false",
                     unit, source))
    out = table("reproduction", ("quantity", "computed", "paper", "rel_deviation", "within_tolerance", "unit",
                                 "source"), rows)
    return RunResult("reproduce_paper", Experiment.PHASE_GATE, gate.report, (out,))
