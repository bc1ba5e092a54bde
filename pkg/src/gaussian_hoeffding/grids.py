"""Parameter sweeps of the Hoeffding bound over two-dimensional grids.

Each figure fixes a pair of state families and two axes; the grid value is
``H(r)`` for every axis combination.  Axes are sampled with ``np.linspace`` and
open endpoints such as ``nu = 1`` are pushed to ``1 + 1e-3``.
"""

from __future__ import annotations

import enum
import io
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .catalog import EPR, SqueezedThermal, Thermal, build
from .errors import InvalidSpec
from .hoeffding import DEFAULT_OPTIONS, OptimizerOptions, hoeffding_bound

OPEN_EDGE = 1.0 + 1e-3


class Figure(str, enum.Enum):
    THERMAL_GRID = "thermal-grid"
    ST_MAXSEP = "st-maxsep"
    THERMAL_VS_EPR = "thermal-vs-epr"
    ST_CORRELATIONS = "st-correlations"


@dataclass(frozen=True)
class Axis:
    name: str
    lo: float
    hi: float
    steps: int = 41

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


@dataclass(frozen=True)
class GridJob:
    """A figure, its two axes (outer first) and the fixed parameters.

    ``r`` is the false-positive exponent when neither axis is ``r``; ``mu``
    is the common thermal variance of the st-correlations figure.
    """

    figure: Figure
    x: Axis
    y: Axis
    r: Optional[float] = None
    mu: Optional[float] = None
    opts: OptimizerOptions = field(default=DEFAULT_OPTIONS, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "figure", Figure(self.figure))
        for ax in (self.x, self.y):
            if int(ax.steps) != ax.steps or ax.steps < 2:
                raise InvalidSpec(f"axis {ax.name}: steps must be an integer >= 2, got {ax.steps!r}")
            if not (math.isfinite(ax.lo) and math.isfinite(ax.hi)) or ax.lo > ax.hi:
                raise InvalidSpec(f"axis {ax.name}: need finite lo <= hi, got [{ax.lo}, {ax.hi}]")
        names = (self.x.name, self.y.name)
        if names != _AXES[self.figure]:
            raise InvalidSpec(f"{self.figure.value} expects axes {_AXES[self.figure]}, got {names}")
        _check_domain(self)


_AXES = {
    Figure.THERMAL_GRID: ("nu0", "nu1"),
    Figure.ST_MAXSEP: ("mu", "r"),
    Figure.THERMAL_VS_EPR: ("mu", "r"),
    Figure.ST_CORRELATIONS: ("c0", "c1"),
}


def _check_domain(job: GridJob) -> None:
    fig, x, y = job.figure, job.x, job.y
    if fig is Figure.THERMAL_GRID:
        if x.lo < 1.0 or y.lo < 1.0:
            raise InvalidSpec("thermal-grid: nu0 and nu1 must be >= 1")
    elif fig in (Figure.ST_MAXSEP, Figure.THERMAL_VS_EPR):
        if x.lo < 1.0:
            raise InvalidSpec(f"{fig.value}: mu must be >= 1")
        if y.lo <= 0.0:
            raise InvalidSpec(f"{fig.value}: r must be > 0")
    else:
        if job.mu is None or job.mu < 1.0:
            raise InvalidSpec("st-correlations: mu must be given and >= 1")
        c_max = math.sqrt(job.mu * job.mu - 1.0)
        if x.lo < 0.0 or y.lo < 0.0 or x.hi > c_max or y.hi > c_max:
            raise InvalidSpec(f"st-correlations: c0, c1 must lie in [0, sqrt(mu^2 - 1)] = [0, {c_max:.6g}]")
    if fig in (Figure.THERMAL_GRID, Figure.ST_CORRELATIONS):
        if job.r is None or not (job.r > 0.0 and math.isfinite(job.r)):
            raise InvalidSpec(f"{fig.value}: r must be a positive finite number")


def default_job(figure: Figure | str, *, steps: int = 41) -> GridJob:
    """Default sampling of the published surfaces (41 points per axis)."""
    figure = Figure(figure)
    if figure is Figure.THERMAL_GRID:
        return GridJob(figure, Axis("nu0", OPEN_EDGE, 3.0, steps), Axis("nu1", OPEN_EDGE, 3.0, steps), r=0.1)
    if figure is Figure.ST_MAXSEP:
        return GridJob(figure, Axis("mu", OPEN_EDGE, 3.0, steps), Axis("r", 0.01, 0.2, steps))
    if figure is Figure.THERMAL_VS_EPR:
        return GridJob(figure, Axis("mu", OPEN_EDGE, 3.0, steps), Axis("r", 0.05, 2.0, steps))
    mu = 3.0
    c_max = math.sqrt(mu * mu - 1.0)
    return GridJob(figure, Axis("c0", 0.0, c_max, steps), Axis("c1", 0.0, c_max, steps), r=0.1, mu=mu)


def _pair(job: GridJob, a: float, b: float):
    """(rho0, rho1, r) for the grid cell at axis values (a, b)."""
    fig = job.figure
    if fig is Figure.THERMAL_GRID:
        return build(Thermal(a)), build(Thermal(b)), job.r
    if fig is Figure.ST_MAXSEP:
        return build(SqueezedThermal(a, 0.0)), build(SqueezedThermal(a, a - 1.0)), b
    if fig is Figure.THERMAL_VS_EPR:
        return build(SqueezedThermal(a, 0.0)), build(EPR(a)), b
    return build(SqueezedThermal(job.mu, a)), build(SqueezedThermal(job.mu, b)), job.r


def compute_grid(job: GridJob, progress: Optional[Callable[[int, int], None]] = None) -> np.ndarray:
    """Bound values on the grid, shape ``(x.steps, y.steps)``; ``inf`` marks divergence."""
    xs, ys = job.x.values(), job.y.values()
    H = np.empty((xs.size, ys.size))
    for i, a in enumerate(xs):
        for j, b in enumerate(ys):
            rho0, rho1, r = _pair(job, float(a), float(b))
            H[i, j] = hoeffding_bound(rho0, rho1, r, job.opts).value
        if progress is not None:
            progress(i + 1, xs.size)
    return H


def _fmt(x: float) -> str:
    return "inf" if math.isinf(x) else repr(float(x))


def grid_csv(job: GridJob, H: np.ndarray) -> str:
    """CSV text: header ``x,y,H`` then one row per cell, outer axis first."""
    xs, ys = job.x.values(), job.y.values()
    buf = io.StringIO()
    buf.write(f"{job.x.name},{job.y.name},H\n")
    for i, a in enumerate(xs):
        for j, b in enumerate(ys):
            buf.write(f"{_fmt(a)},{_fmt(b)},{_fmt(H[i, j])}\n")
    return buf.getvalue()


def read_grid_csv(text: str) -> tuple[list[str], np.ndarray]:
    """Parse a grid CSV back into its header and an ``(m, 3)`` array."""
    lines = text.strip("\n").split("\n")
    header = lines[0].split(",")
    rows = [[float(v) for v in line.split(",")] for line in lines[1:]]
    return header, np.array(rows)
