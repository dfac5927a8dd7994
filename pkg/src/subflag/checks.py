"""Named verification criteria run by ``subflag verify``.

Each criterion returns a :class:`CriterionResult`; ``residual`` is the worst
deviation observed (0 for exact checks that pass).
"""

from __future__ import annotations

import math
import random
import statistics
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Callable

from . import codazzi
from .algebra import X, Y, Z
from .chart_fields import HEISENBERG, SU2, lie_bracket
from .codazzi import codazzi_curvature, derivation_equations
from .dual import sin
from .holonomy_flag import flag_dimensions, flag_spaces
from .liealg_connection import (
    connection_table,
    curvature,
    metric_obstruction,
    metric_parallel_defect,
    torsion,
)
from .model_groups import cartan_structure, heisenberg_frame, su2_frame
from .sampling import DEFAULT_SEED, sample_points

SU2_R = [[0.0, -4.0, 0.0], [4.0, 0.0, 0.0], [0.0, 0.0, 0.0]]


@dataclass
class CriterionResult:
    name: str
    passed: bool
    residual: float
    detail: str = ""
    seconds: float = 0.0


@dataclass
class Context:
    seed: int = DEFAULT_SEED
    table_factory: Callable = connection_table
    extra: dict = field(default_factory=dict)


def _max_dev(a, b) -> float:
    return max(abs(x - y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def _rational_tuples(seed: int, n: int) -> list[tuple[Fraction, ...]]:
    rng = random.Random(seed)
    return [tuple(Fraction(rng.randint(-24, 24), rng.randint(1, 12)) for _ in range(4)) for _ in range(n)]


def su2_closed_form_coefficients(theta: float, psi: float) -> dict[str, float]:
    """The closed-form Γ and b of the SU(2) frame, keyed like ``G1_12`` (Γ^1_12)."""
    s2t, c2t = math.sin(2 * theta), math.cos(2 * theta)
    s, c = math.sin(2 * psi), math.cos(2 * psi)
    return {
        "G1_11": -2 * c**2 * s * c2t / s2t,
        "G2_11": 2 * c * c2t * (1 + s**2) / s2t,
        "b_11": -2 * c * s,
        "G1_12": -2 * c2t * c**3 / s2t,
        "G2_12": -2 * c2t * s**3 / s2t,
        "G1_22": 2 * c2t * s * (1 + c**2) / s2t,
        "G2_22": -2 * c2t * s**2 * c / s2t,
        "b_12": 2 * s**2,
        "b_21": -2 * c**2,
        "b_22": 2 * s * c,
    }


def heisenberg_flatness(ctx: Context) -> CriterionResult:
    frame = heisenberg_frame()
    t0 = time.perf_counter()
    worst = max(
        max(abs(v) for row in codazzi_curvature(frame, p) for v in row)
        for p in sample_points(HEISENBERG, 50, ctx.seed)
    )
    dt = time.perf_counter() - t0
    return CriterionResult("heisenberg_flatness", worst <= 1e-12 and dt < 1.0, worst, f"max |R| over 50 points, {dt:.3f}s", dt)


def su2_constant_curvature(ctx: Context) -> CriterionResult:
    frame = su2_frame()
    t0 = time.perf_counter()
    rs = [codazzi_curvature(frame, p) for p in sample_points(SU2, 50, ctx.seed)]
    dt = time.perf_counter() - t0
    worst = max(_max_dev(r, SU2_R) for r in rs)
    spread = max(statistics.stdev(r[i][j] for r in rs) for i in range(3) for j in range(3))
    ok = worst <= 1e-8 and spread < 1e-7 and dt < 5.0
    return CriterionResult("su2_constant_curvature", ok, worst, f"entry std max {spread:.3g}, {dt:.3f}s", dt)


def su2_coefficients(ctx: Context) -> CriterionResult:
    frame = su2_frame()
    worst = 0.0
    for p in sample_points(SU2, 50, ctx.seed):
        dec = derivation_equations(frame, p)
        g, b = dec.gamma, dec.b
        got = {
            "G1_11": g[0][0][0], "G2_11": g[1][0][0], "b_11": b[0][0],
            "G1_12": g[0][0][1], "G2_12": g[1][0][1], "b_12": b[0][1],
            "G1_22": g[0][1][1], "G2_22": g[1][1][1], "b_22": b[1][1],
            "b_21": b[1][0],
        }
        want = su2_closed_form_coefficients(p.coords[1], p.coords[2])
        worst = max(worst, max(abs(got[k] - want[k]) for k in want))
    return CriterionResult("su2_coefficients", worst <= 1e-8, worst, "6 Γ + 4 b closed forms at 50 points")


def cartan_curvature(ctx: Context) -> CriterionResult:
    bad = []
    for rho in (-1, 0, 1, 2):
        r = codazzi_curvature(cartan_structure(rho), mode=codazzi.LIE)
        want = [[0, -2 * rho, 0], [2 * rho, 0, 0], [0, 0, 0]]
        if r != want:
            bad.append(rho)
    return CriterionResult("cartan_curvature", not bad, float(len(bad)), f"exact for rho in -1,0,1,2; failing {bad}")


def bracket_bookkeeping(ctx: Context) -> CriterionResult:
    worst = 0.0
    for frame, expected in ((heisenberg_frame(), 1.0), (su2_frame(), 2.0)):
        for p in sample_points(frame.chart_id, 20, ctx.seed):
            b = derivation_equations(frame, p).b
            worst = max(worst, abs(b[0][1] - b[1][0] - expected))
            zcoef = codazzi.decompose_in_frame(lie_bracket(frame.X, frame.Y, p), frame, p)[2]
            worst = max(worst, abs(zcoef - expected))
    return CriterionResult("bracket_bookkeeping", worst <= 1e-9, worst, "b12 - b21 vs Z-part of [X,Y]")


def _exact_norm(v) -> float:
    return float(max(abs(c) for c in v))


def torsion_free(ctx: Context) -> CriterionResult:
    worst = 0.0
    for params in _rational_tuples(ctx.seed, 200):
        ct = ctx.table_factory(*params)
        for a, b in product((X, Y, Z), repeat=2):
            worst = max(worst, _exact_norm(torsion(ct, a, b)))
    return CriterionResult("torsion_free", worst == 0, worst, "all basis pairs, 200 rational tuples")


def horizontal_parallelism(ctx: Context) -> CriterionResult:
    worst = 0.0
    for params in _rational_tuples(ctx.seed + 1, 200):
        ct = ctx.table_factory(*params)
        for a, b, c in product((X, Y), repeat=3):
            worst = max(worst, abs(float(metric_parallel_defect(ct, a, b, c))))
    return CriterionResult("horizontal_parallelism", worst == 0, worst, "horizontal basis triples, 200 rational tuples")


def metric_obstruction_residual(ctx: Context) -> CriterionResult:
    worst = 0.0
    for chi in (Fraction(-3, 2), Fraction(1), Fraction(2), Fraction(0)):
        rep = metric_obstruction(chi, Fraction(5, 3), Fraction(1, 2), Fraction(-2))
        for row in rep.rows:
            worst = max(worst, abs(float(row.uxy_slots[2] + chi)))
    return CriterionResult("metric_obstruction_residual", worst == 0, worst, "Z-slot of U(X,Y) residual == -chi on a 5x5x5 metric grid")


def curvature_closed_forms(ctx: Context) -> CriterionResult:
    worst = 0.0
    for chi, kappa, alpha, beta in _rational_tuples(ctx.seed + 2, 200):
        ct = ctx.table_factory(chi, kappa, alpha, beta)
        want = (
            (0, (chi - kappa) / 4, -Fraction(3, 2) * alpha),
            ((chi + kappa) / 4, 0, -Fraction(3, 2) * beta),
            (-alpha / 2 * (chi + kappa), beta / 2 * (chi - kappa), 0),
        )
        for v, w in zip((X, Y, Z), want):
            got = curvature(ct, X, Y, v)
            worst = max(worst, max(abs(float(g - e)) for g, e in zip(got, w)))
    return CriterionResult("curvature_closed_forms", worst == 0, worst, "R(X,Y){X,Y,Z} closed forms, 200 rational tuples")


def _minor_rank(vectors) -> int:
    """Rank from the largest nonvanishing minor (independent of elimination)."""
    rows = [list(v) for v in vectors]
    for k in range(min(len(rows), 3), 0, -1):
        for ri in combinations(range(len(rows)), k):
            for ci in combinations(range(3), k):
                m = [[rows[r][c] for c in ci] for r in ri]
                if _det(m) != 0:
                    return k
    return 0


def _det(m) -> Fraction:
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _det([row[:j] + row[j + 1 :] for row in m[1:]]) for j in range(len(m)))


def flag_vanishing(ctx: Context) -> CriterionResult:
    zero = flag_dimensions(0, 0, 0, 0)
    flag = flag_spaces(connection_table(1, 3, 1, 2))
    oracle = _minor_rank(flag.R1_basis)
    ok = zero == (0, 0) and flag.dims[1] == oracle
    return CriterionResult("flag_vanishing", ok, float(abs(flag.dims[1] - oracle)), f"dims(0,0,0,0)={zero}; dim R1(1,3,1,2)={flag.dims[1]} oracle={oracle}")


def classical_baseline(ctx: Context) -> CriterionResult:
    rng = random.Random(ctx.seed)
    worst_res = 0.0
    for surf in (codazzi.sphere(), codazzi.torus(2.0, 1.0)):
        for _ in range(20):
            u = (rng.uniform(0.2, math.pi - 0.2), rng.uniform(0.0, 2 * math.pi))
            worst_res = max(worst_res, max(abs(v) for row in codazzi.codazzi_residual(surf, u) for v in row))
    k_dev = abs(codazzi.surface_forms(codazzi.sphere(), (0.5, 0.8)).gaussian_curvature - 1.0)
    gam = codazzi.christoffel_from_metric(lambda u: [[1.0, 0.0], [0.0, sin(u[0]) ** 2]], (0.7, 0.0))
    c_dev = abs(gam[1][0][1] - 1 / math.tan(0.7))
    ok = worst_res <= 1e-6 and k_dev <= 1e-8 and c_dev <= 1e-8
    return CriterionResult("classical_baseline", ok, max(worst_res, k_dev, c_dev), f"codazzi {worst_res:.2g}, K {k_dev:.2g}, cot {c_dev:.2g}")


def determinism(ctx: Context) -> CriterionResult:
    from .cli_reports import ReportRequest, dumps, run_report

    req = ReportRequest(command="report", group=SU2, n_points=5, seed=1)
    first, second = dumps(run_report(req)), dumps(run_report(req))
    return CriterionResult("determinism", first == second, 0.0 if first == second else 1.0, "su2 report, 5 points, seed 1")


CRITERIA: dict[str, Callable[[Context], CriterionResult]] = {
    "heisenberg_flatness": heisenberg_flatness,
    "su2_constant_curvature": su2_constant_curvature,
    "su2_coefficients": su2_coefficients,
    "cartan_curvature": cartan_curvature,
    "bracket_bookkeeping": bracket_bookkeeping,
    "torsion_free": torsion_free,
    "horizontal_parallelism": horizontal_parallelism,
    "metric_obstruction_residual": metric_obstruction_residual,
    "curvature_closed_forms": curvature_closed_forms,
    "flag_vanishing": flag_vanishing,
    "classical_baseline": classical_baseline,
    "determinism": determinism,
}
