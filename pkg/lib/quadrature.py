"""Thin wrapper over ``scipy.integrate.quad`` that turns QUADPACK warnings into errors."""
import logging
import math
from typing import Callable, Iterable, List, Optional

from scipy.integrate import quad

from lib.errors import InvalidParameter, QuadratureNonConvergence

logger = logging.getLogger(__name__)


def check_tolerance(tol: float, low: float = 1e-12, high: float = 1e-3) -> float:
    tol = float(tol)
    if not (low < tol < high):
        raise InvalidParameter(f"Quadrature tolerance must lie in ({low:g}, {high:g}), got {tol!r}")
    return tol


def peak_breakpoints(a: float, b: float, center: float = 0.0, scale: float = 1.0) -> List[float]:
    """Breakpoints clustered geometrically around a sharp peak at ``center``.

    QUADPACK only bisects where it sees structure; a peak of width ``scale`` inside an
    interval thousands of widths long is otherwise sampled coarsely enough to be missed.
    """
    points = []
    step = scale
    if a < center < b:
        points.append(center)
    while step < max(abs(b - center), abs(a - center)):
        for p in (center - step, center + step):
            if a < p < b:
                points.append(p)
        step *= 4.0
    return sorted(points)


def adaptive_quad(
    func: Callable[[float], float],
    a: float,
    b: float,
    *,
    rel_tol: float,
    abs_tol: float = 0.0,
    points: Optional[Iterable[float]] = None,
    limit: int = 400,
    label: str = "integral",
) -> float:
    if a == b:
        return 0.0
    finite = math.isfinite(a) and math.isfinite(b)
    pts = list(points) if (points is not None and finite) else None
    if pts is not None:
        limit = max(limit, 50 * (len(pts) + 1))
    retval = quad(func, a, b, epsrel=rel_tol, epsabs=abs_tol, points=pts or None, limit=limit, full_output=1)
    value, error, info = retval[0], retval[1], retval[2]
    if len(retval) > 3:
        raise QuadratureNonConvergence(
            f"{label} over [{a!r}, {b!r}] did not reach rel_tol={rel_tol:g}: {retval[3]!s} "
            f"(value={value!r}, error={error!r})"
        )
    logger.debug("%s over [%g, %g] = %.12g (err %.2g, %d subintervals)", label, a, b, value, error, info["last"])
    return value
