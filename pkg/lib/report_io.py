"""Console tables, comma-separated dumps and optional PNG plots of run results."""
from __future__ import annotations

import csv
import logging
import math
from numbers import Real
from pathlib import Path
from typing import Iterable, List, Sequence, TextIO

from classes.constraint_report import ConstraintReport
from classes.scenario import ResultTable, RunResult
from classes.two_photon_state import TwoPhotonState
from lib.constraints import to_rows

logger = logging.getLogger(__name__)

REPORT_COLUMNS = ("entry", "name", "member", "lhs", "rhs", "margin", "strictness", "threshold", "status", "note")


def fmt(value) -> str:
    """Fixed 9-significant-digit rendering so identical runs give identical files."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Real):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, ".9g")
    return str(value)


def report_table(report: ConstraintReport) -> ResultTable:
    rows = [tuple(r[c] for c in REPORT_COLUMNS) for r in to_rows(report)]
    return ResultTable("constraints", REPORT_COLUMNS + ("source",),
                       tuple(row + ("constraints.check_all",) for row in rows))


def write_csv(path: Path, columns: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([fmt(v) for v in row])
    logger.info("Wrote %s", path)
    return path


def write_surface(path: Path, state: TwoPhotonState) -> Path:
    return write_csv(path, ("z1_m", "z2_m", "re_f12", "im_f12", "phi12_rad", "valid"), state.rows())


def print_table(t: ResultTable, stream: TextIO) -> None:
    cells = [list(t.columns)] + [[fmt(v) for v in row] for row in t.rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(t.columns))]
    stream.write(f"== {t.name} ==\n")
    for k, row in enumerate(cells):
        stream.write("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n")
        if k == 0:
            stream.write("  ".join("-" * w for w in widths) + "\n")
    stream.write("\n")


def tables_of(result: RunResult) -> List[ResultTable]:
    """The constraint report first, then the experiment's own tables."""
    out = [report_table(result.report)] if result.report is not None else []
    return out + list(result.tables)


def print_result(result: RunResult, stream: TextIO) -> None:
    stream.write(f"# {result.scenario_name} ({result.experiment.value})\n\n")
    for t in tables_of(result):
        # the sampled curve goes to files only
        if t.name == "potential":
            continue
        print_table(t, stream)


_FILE_NAMES = {
    "constraints": "report.csv",
    "results": "results.csv",
    "potential": "potential.csv",
    "sweep": "sweep.csv",
    "reproduction": "results.csv",
}


def write_result(result: RunResult, out_dir: Path, plot: bool = False) -> List[Path]:
    out_dir = Path(out_dir)
    written = []
    for t in tables_of(result):
        name = _FILE_NAMES.get(t.name, f"{t.name}.csv")
        columns = t.columns
        rows = t.rows
        if t.name == "potential":
            columns, rows = ("zeta", "delta_reduced"), [r[:2] for r in t.rows]
        written.append(write_csv(out_dir / name, columns, rows))
    if result.surface is not None:
        written.append(write_surface(out_dir / "phase_surface.csv", result.surface))
    if plot:
        written += plot_result(result, out_dir)
    return written


def plot_result(result: RunResult, out_dir: Path) -> List[Path]:
    # imported here so table output never needs a plotting backend
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    written = []
    if result.curve is not None:
        zeta, values = result.curve
        fig, ax = plt.subplots(figsize=(5, 3.5))
        ax.plot(zeta, values, color="tab:blue")
        ax.axhline(0.0, color="0.6", lw=0.8)
        ax.set_xlabel(r"$\zeta = z/\sqrt{2}w$")
        ax.set_ylabel("reduced potential")
        fig.tight_layout()
        path = Path(out_dir) / "potential.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)
    if result.surface is not None:
        s = result.surface
        fig, ax = plt.subplots(figsize=(5, 4))
        mesh = ax.pcolormesh(s.z2 * 1e6, s.z1 * 1e6, s.phase, shading="auto", cmap="viridis")
        fig.colorbar(mesh, ax=ax, label=r"$\phi_{12}$ (rad)")
        ax.set_xlabel(r"$z_2$ ($\mu$m)")
        ax.set_ylabel(r"$z_1$ ($\mu$m)")
        fig.tight_layout()
        path = Path(out_dir) / "phase_surface.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)
    for path in written:
        logger.info("Wrote %s", path)
    return written
