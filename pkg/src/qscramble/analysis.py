"""Least-squares fitting and finite-size-scaling collapse."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDataError, SingularFitError


@dataclass(slots=True)
class FitResult:
    slope: float
    intercept: float
    residual_rms: float
    n_points: int
    slope_stderr: float

    @property
    def slope_tstat(self) -> float:
        if self.slope_stderr == 0.0:
            return math.inf if self.slope != 0.0 else 0.0
        return self.slope / self.slope_stderr


def linear_fit(xs, ys) -> FitResult:
    """Ordinary least squares y = slope*x + intercept."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.size != y.size:
        raise ValueError(f"length mismatch: {x.size} vs {y.size}")
    if x.size < 2:
        raise SingularFitError(f"need >= 2 points, got {x.size}")
    sxx = float(((x - x.mean()) ** 2).sum())
    if sxx == 0.0:
        raise SingularFitError("all x values identical")
    slope = float(((x - x.mean()) * (y - y.mean())).sum() / sxx)
    intercept = float(y.mean() - slope * x.mean())
    res = y - (slope * x + intercept)
    rms = float(np.sqrt((res**2).mean()))
    if x.size > 2:
        stderr = float(np.sqrt((res**2).sum() / (x.size - 2) / sxx))
    else:
        stderr = 0.0
    return FitResult(slope, intercept, rms, int(x.size), stderr)


@dataclass(slots=True)
class CollapseResult:
    p_c: float
    nu: float
    objective: float
    grid_resolution: tuple[float, float]
    low_confidence: bool


def _master_curve_cost(x: np.ndarray, y: np.ndarray, knots: int) -> float:
    """Mean squared deviation from a piecewise-linear fit in x."""
    lo, hi = float(x.min()), float(x.max())
    if hi - lo < 1e-12:
        return float(np.var(y))
    pos = np.linspace(lo, hi, knots)
    # Hat-function design matrix of the linear spline.
    design = np.zeros((x.size, knots))
    span = pos[1] - pos[0]
    left = np.clip(((x - lo) / span).astype(int), 0, knots - 2)
    frac = (x - pos[left]) / span
    rows = np.arange(x.size)
    design[rows, left] = 1.0 - frac
    design[rows, left + 1] = frac
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    res = y - design @ coef
    return float((res**2).mean())


def fss_collapse(curves, p_range=(0.05, 0.35), p_step=0.005,
                 nu_range=(0.5, 2.5), nu_step=0.05, knots: int = 12) -> CollapseResult:
    """Exhaustive grid search for the scaling collapse of crossing curves.

    ``curves`` is a list of (n, p_values, y_values).  Each candidate
    (p_c, nu) rescales x -> (p - p_c) * n^(1/nu), pools all points and
    scores the mean squared vertical deviation from one piecewise-linear
    master curve.  Ties break lexicographically on (p_c, nu); a flat
    objective landscape (no crossing information) is flagged.
    """
    if len(curves) < 3:
        raise InsufficientDataError(f"need >= 3 system sizes, got {len(curves)}")
    cleaned = []
    for n, ps, ys in curves:
        ps = np.asarray(ps, dtype=float)
        ys = np.asarray(ys, dtype=float)
        if ps.size < 8:
            raise InsufficientDataError(
                f"need >= 8 grid points per size, got {ps.size} for n={n}"
            )
        cleaned.append((float(n), ps, ys))

    p_grid = np.arange(p_range[0], p_range[1] + p_step / 2, p_step)
    nu_grid = np.arange(nu_range[0], nu_range[1] + nu_step / 2, nu_step)

    best = None
    objectives = []
    for p_c in p_grid:
        for nu in nu_grid:
            xs = np.concatenate([(ps - p_c) * n ** (1.0 / nu) for n, ps, _ in cleaned])
            ys = np.concatenate([y for _, _, y in cleaned])
            order = np.argsort(xs, kind="stable")
            cost = _master_curve_cost(xs[order], ys[order], knots)
            objectives.append(cost)
            if best is None or cost < best[0] - 1e-15:
                best = (cost, float(p_c), float(nu))

    objectives = np.asarray(objectives)
    spread = float(objectives.max() - objectives.min())
    flat = spread <= 1e-9 * max(1.0, float(objectives.max()))
    on_boundary = (
        abs(best[1] - p_grid[0]) < 1e-12 or abs(best[1] - p_grid[-1]) < 1e-12
        or abs(best[2] - nu_grid[0]) < 1e-12 or abs(best[2] - nu_grid[-1]) < 1e-12
    )
    return CollapseResult(
        p_c=best[1],
        nu=best[2],
        objective=best[0],
        grid_resolution=(float(p_step), float(nu_step)),
        low_confidence=flat or on_boundary,
    )


def curve_crossings(ps, y1, y2) -> list[float]:
    """Interpolated x positions where two sampled curves cross."""
    ps = np.asarray(ps, dtype=float)
    d = np.asarray(y1, dtype=float) - np.asarray(y2, dtype=float)
    out = []
    for i in range(d.size - 1):
        a, b = d[i], d[i + 1]
        if a == 0.0:
            out.append(float(ps[i]))
        elif a * b < 0.0:
            out.append(float(ps[i] + (ps[i + 1] - ps[i]) * a / (a - b)))
    if d[-1] == 0.0:
        out.append(float(ps[-1]))
    return out
