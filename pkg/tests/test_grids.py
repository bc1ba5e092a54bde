import math

import numpy as np
import pytest

from gaussian_hoeffding import InvalidSpec
from gaussian_hoeffding.grids import Axis, Figure, GridJob, compute_grid, default_job, grid_csv, read_grid_csv


def test_default_jobs():
    job = default_job("thermal-grid")
    assert (job.x.lo, job.x.hi, job.x.steps, job.r) == (1.001, 3.0, 41, 0.1)
    job = default_job(Figure.ST_CORRELATIONS)
    assert job.mu == 3.0 and job.x.hi == pytest.approx(math.sqrt(8))
    for f in Figure:
        assert default_job(f, steps=3).x.steps == 3


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(figure="thermal-grid", x=Axis("nu0", 0.5, 3), y=Axis("nu1", 1, 3), r=0.1),
        dict(figure="thermal-grid", x=Axis("nu0", 1, 3), y=Axis("nu1", 1, 3), r=None),
        dict(figure="thermal-grid", x=Axis("nu0", 1, 3, 1), y=Axis("nu1", 1, 3), r=0.1),
        dict(figure="thermal-grid", x=Axis("mu", 1, 3), y=Axis("nu1", 1, 3), r=0.1),
        dict(figure="st-maxsep", x=Axis("mu", 1, 3), y=Axis("r", 0.0, 1)),
        dict(figure="st-correlations", x=Axis("c0", 0, 3), y=Axis("c1", 0, 2), r=0.1, mu=3.0),
        dict(figure="st-correlations", x=Axis("c0", 0, 1), y=Axis("c1", 0, 1), r=0.1),
    ],
)
def test_invalid_jobs(kwargs):
    with pytest.raises(InvalidSpec):
        GridJob(**kwargs)


def test_csv_format_and_order():
    job = GridJob("thermal-vs-epr", Axis("mu", 1.5, 3.0, 3), Axis("r", 0.05, 2.0, 2))
    H = compute_grid(job)
    text = grid_csv(job, H)
    lines = text.split("\n")
    assert lines[0] == "mu,r,H" and text.endswith("\n") and "\r" not in text
    header, rows = read_grid_csv(text)
    assert header == ["mu", "r", "H"]
    # outer axis first
    assert np.array_equal(rows[:, 0], np.repeat(job.x.values(), 2))
    assert np.array_equal(rows[:, 1], np.tile(job.y.values(), 3))
    assert "inf" in text
    assert np.array_equal(rows[:, 2].reshape(3, 2), H)


def test_csv_reproducible():
    job = default_job("st-correlations", steps=4)
    assert grid_csv(job, compute_grid(job)) == grid_csv(job, compute_grid(job))


def test_progress_callback():
    seen = []
    compute_grid(default_job("thermal-grid", steps=3), progress=lambda i, n: seen.append((i, n)))
    assert seen == [(1, 3), (2, 3), (3, 3)]
