"""Seeded chart points.

Points come from numpy's ``default_rng`` (PCG64) seeded with the given
integer, so a seed fully determines the sample on every platform.
"""

from __future__ import annotations

import math

import numpy as np

from .chart_fields import HEISENBERG, SU2, ChartPoint

DEFAULT_SEED = 0x5EED

SU2_THETA_RANGE = (0.1, math.pi / 2 - 0.1)
HEISENBERG_RANGE = (-2.0, 2.0)


def sample_points(chart_id: str, n: int, seed: int = DEFAULT_SEED) -> list[ChartPoint]:
    """``n`` admissible points: Heisenberg from [-2, 2]^3, SU(2) with θ clear of sin 2θ = 0."""
    rng = np.random.default_rng(seed)
    if chart_id == HEISENBERG:
        pts = rng.uniform(*HEISENBERG_RANGE, size=(n, 3))
    elif chart_id == SU2:
        phi = rng.uniform(0.0, 2 * math.pi, size=n)
        theta = rng.uniform(*SU2_THETA_RANGE, size=n)
        psi = rng.uniform(0.0, 2 * math.pi, size=n)
        pts = np.column_stack([phi, theta, psi])
    else:
        raise ValueError(f"unknown chart {chart_id!r}")
    return [ChartPoint(chart_id, tuple(float(x) for x in row)) for row in pts]
