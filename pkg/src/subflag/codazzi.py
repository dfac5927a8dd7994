"""Derivation/Weingarten equations, Codazzi matrices and their curvature.

A frame (e1, e2, e3) = (X, Y, Z) is differentiated along e1 and e2.  Row ``j``
of ``A_i`` holds the frame coefficients of the derivative of ``e_j`` along
``e_i``; rows 1-2 give the Christoffel-like Γ and the transverse b, row 3
the Weingarten coefficients.  The derivative is either the componentwise
("standard") derivative or the Lie bracket ("lie").

The curvature ``R = D_Y A1 - D_X A2 + A1 A2 - A2 A1`` differentiates the
matrix entries along the frame fields themselves.  For a genuine surface,
with coordinate fields in place of X, Y, this is the Codazzi residual and
vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .chart_fields import ChartPoint, ChartVector, MatrixField, _check, bracket, derive
from .dual import cos, jvp, primal, sin, sqrt, to_float
from .linalg import commutator, cramer3, det3
from .model_groups import ModelFrame, StructureConstants

STANDARD = "standard"
LIE = "lie"
MODES = (STANDARD, LIE)

FRAME_DET_TOL = 1e-12
SURFACE_TOL = 1e-10


class SingularFrameError(ValueError):
    pass


class DegenerateSurfaceError(ValueError):
    pass


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


# ---------------------------------------------------------------- frames


def _frame_matrix(frame: ModelFrame, coords: Sequence[Any]) -> list[list[Any]]:
    cols = [f.rule(coords) for f in frame.fields]
    return [[cols[c][r] for c in range(3)] for r in range(3)]


def _frame_det(m: Sequence[Sequence[Any]]) -> Any:
    d = det3(m)
    if abs(primal(d)) <= FRAME_DET_TOL:
        raise SingularFrameError("frame vectors are linearly dependent")
    return d


def frame_a_matrices(frame: ModelFrame, coords: Sequence[Any], mode: str = STANDARD) -> tuple[list, list]:
    """``(A1, A2)`` at ``coords`` (floats or dual numbers)."""
    op = derive if mode == STANDARD else bracket
    m = _frame_matrix(frame, coords)
    d = _frame_det(m)
    fields = frame.fields
    a1, a2 = (
        [cramer3(m, op(fields[i], fields[j], coords), d) for j in range(3)]
        for i in range(2)
    )
    return a1, a2


def a_matrix_field(frame: ModelFrame, index: int, mode: str = STANDARD) -> MatrixField:
    """``A_1`` (index 0) or ``A_2`` (index 1) as a point-dependent matrix field."""
    _check_mode(mode)
    return MatrixField(frame.chart_id, lambda c: frame_a_matrices(frame, c, mode)[index], f"A{index + 1}")


def decompose_in_frame(v: ChartVector, frame: ModelFrame, p: ChartPoint) -> tuple[float, float, float]:
    """Coefficients ``(a, b, c)`` with ``v = aX + bY + cZ`` at ``p``."""
    _check(p, *frame.fields)
    if v.chart_id != p.chart_id:
        raise ValueError(f"vector on {v.chart_id!r}, point on {p.chart_id!r}")
    m = _frame_matrix(frame, p.coords)
    return tuple(to_float(cramer3(m, v.components, _frame_det(m))))


@dataclass(frozen=True)
class FrameDecomposition:
    """Derivation and Weingarten coefficients at one point.

    ``gamma[k][i][j]`` is Γ^{k+1}_{i+1 j+1}, ``b[i][j]`` is b_{i+1 j+1}
    (indices zero-based), ``weingarten[i]`` the frame coefficients of the
    derivative of Z along e_{i+1}.
    """

    gamma: tuple
    b: tuple
    weingarten: tuple
    point: ChartPoint | None
    mode: str = STANDARD

    @classmethod
    def from_a_matrices(cls, a1, a2, point: ChartPoint | None, mode: str) -> FrameDecomposition:
        a = (a1, a2)
        gamma = tuple(tuple(tuple(a[i][j][k] for j in range(2)) for i in range(2)) for k in range(2))
        b = tuple(tuple(a[i][j][2] for j in range(2)) for i in range(2))
        weingarten = tuple(tuple(a[i][2]) for i in range(2))
        return cls(gamma, b, weingarten, point, mode)


def derivation_equations(frame: ModelFrame, p: ChartPoint, mode: str = STANDARD) -> FrameDecomposition:
    _check_mode(mode)
    _check(p, *frame.fields)
    a1, a2 = to_float(list(frame_a_matrices(frame, p.coords, mode)))
    return FrameDecomposition.from_a_matrices(a1, a2, p, mode)


@dataclass(frozen=True)
class CodazziMatrices:
    A1: tuple
    A2: tuple
    mode: str = STANDARD


def _freeze(m) -> tuple:
    return tuple(tuple(row) for row in m)


def structure_a_matrices(sc: StructureConstants) -> tuple[list, list]:
    """Lie-mode ``(A1, A2)`` of an abstract bracket table (constant matrices)."""
    return tuple([list(sc.table[i][j].coeffs) for j in range(3)] for i in range(2))


def assemble_A_matrices(source: FrameDecomposition | StructureConstants) -> CodazziMatrices:
    if isinstance(source, StructureConstants):
        a1, a2 = structure_a_matrices(source)
        return CodazziMatrices(_freeze(a1), _freeze(a2), LIE)
    g, b, w = source.gamma, source.b, source.weingarten
    a = [
        [[g[0][i][j], g[1][i][j], b[i][j]] for j in range(2)] + [list(w[i])]
        for i in range(2)
    ]
    return CodazziMatrices(_freeze(a[0]), _freeze(a[1]), source.mode)


def codazzi_curvature(
    source: ModelFrame | StructureConstants, p: ChartPoint | None = None, mode: str = STANDARD
) -> list[list[Any]]:
    """``R = D_Y A1 - D_X A2 + A1 A2 - A2 A1`` as a 3x3 matrix.

    Abstract bracket tables only make sense in lie mode; their A-matrices are
    constant so ``R`` is the commutator, computed exactly for rational tables.
    """
    _check_mode(mode)
    if isinstance(source, StructureConstants):
        if mode != LIE:
            raise ValueError("abstract bracket tables only support lie mode")
        a1, a2 = structure_a_matrices(source)
        return commutator(a1, a2)
    if p is None:
        raise ValueError("a chart point is required for a concrete frame")
    _check(p, *source.fields)
    c = p.coords
    a1, a2 = frame_a_matrices(source, c, mode)
    d1 = jvp(lambda q: frame_a_matrices(source, q, mode)[0], c, source.Y.rule(c))
    d2 = jvp(lambda q: frame_a_matrices(source, q, mode)[1], c, source.X.rule(c))
    comm = commutator(a1, a2)
    r = [[d1[i][j] - d2[i][j] + comm[i][j] for j in range(3)] for i in range(3)]
    return to_float(r)


# ------------------------------------------------------ classical surfaces


@dataclass(frozen=True)
class ClassicalSurface:
    """Immersion ``r(u1, u2) -> R^3`` built from dual-aware arithmetic."""

    immersion: Callable[[Sequence[Any]], Sequence[Any]]
    name: str = ""


def sphere(radius: float = 1.0) -> ClassicalSurface:
    return ClassicalSurface(
        lambda u: (radius * sin(u[0]) * cos(u[1]), radius * sin(u[0]) * sin(u[1]), radius * cos(u[0])),
        "sphere",
    )


def torus(major: float = 2.0, minor: float = 1.0) -> ClassicalSurface:
    def r(u):
        ring = major + minor * cos(u[0])
        return (ring * cos(u[1]), ring * sin(u[1]), minor * sin(u[0]))

    return ClassicalSurface(r, "torus")


def cylinder(radius: float = 1.0) -> ClassicalSurface:
    return ClassicalSurface(lambda u: (radius * cos(u[0]), radius * sin(u[0]), u[1] * 1.0), "cylinder")


def plane() -> ClassicalSurface:
    return ClassicalSurface(lambda u: (u[0] * 1.0, u[1] * 1.0, 0.0), "plane")


_E = ((1.0, 0.0), (0.0, 1.0))


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _surface_frame(surface: ClassicalSurface, u: Sequence[Any]) -> dict[str, Any]:
    f = surface.immersion
    r = [jvp(f, u, e) for e in _E]
    rr = [[jvp(lambda w, j=j: jvp(f, w, _E[j]), u, _E[i]) for j in range(2)] for i in range(2)]
    cr = _cross(r[0], r[1])
    norm = sqrt(_dot(cr, cr))
    if primal(norm) < SURFACE_TOL:
        raise DegenerateSurfaceError(f"r1 x r2 vanishes at u={to_float(list(u))}")
    n = [x / norm for x in cr]
    g = [[_dot(r[i], r[j]) for j in range(2)] for i in range(2)]
    return {"r": r, "rr": rr, "n": n, "g": g}


def _inv2(g):
    d = g[0][0] * g[1][1] - g[0][1] * g[1][0]
    return [[g[1][1] / d, -g[0][1] / d], [-g[1][0] / d, g[0][0] / d]]


def surface_a_matrices(surface: ClassicalSurface, u: Sequence[Any]) -> tuple[list, list]:
    """True ``(A1, A2)`` of an immersion in the frame (r1, r2, n)."""
    s = _surface_frame(surface, u)
    r, rr, n, g = s["r"], s["rr"], s["n"], s["g"]
    gi = _inv2(g)
    m = [[r[0][k], r[1][k], n[k]] for k in range(3)]
    d = det3(m)
    b = [[_dot(rr[i][j], n) for j in range(2)] for i in range(2)]
    out = []
    for i in range(2):
        rows = []
        for j in range(2):
            gam = cramer3(m, rr[i][j], d)
            rows.append([gam[0], gam[1], b[i][j]])
        rows.append([-(b[i][0] * gi[0][k] + b[i][1] * gi[1][k]) for k in range(2)] + [0.0])
        out.append(rows)
    return out[0], out[1]


@dataclass(frozen=True)
class SurfaceForms:
    first: tuple
    second: tuple
    gaussian_curvature: float


def surface_forms(surface: ClassicalSurface, u: Sequence[float]) -> SurfaceForms:
    """First and second fundamental forms and ``K = det II / det I``."""
    s = _surface_frame(surface, [float(x) for x in u])
    g = to_float(s["g"])
    ii = to_float([[_dot(s["rr"][i][j], s["n"]) for j in range(2)] for i in range(2)])
    k = (ii[0][0] * ii[1][1] - ii[0][1] * ii[1][0]) / (g[0][0] * g[1][1] - g[0][1] * g[1][0])
    return SurfaceForms(_freeze(g), _freeze(ii), k)


def codazzi_residual(surface: ClassicalSurface, u: Sequence[float]) -> list[list[float]]:
    """``∂2 A1 - ∂1 A2 + A1 A2 - A2 A1``; zero for any genuine immersion."""
    u = [float(x) for x in u]
    a1, a2 = surface_a_matrices(surface, u)
    d1 = jvp(lambda w: surface_a_matrices(surface, w)[0], u, _E[1])
    d2 = jvp(lambda w: surface_a_matrices(surface, w)[1], u, _E[0])
    comm = commutator(a1, a2)
    return to_float([[d1[i][j] - d2[i][j] + comm[i][j] for j in range(3)] for i in range(3)])


def christoffel_from_metric(
    metric: Callable[[Sequence[Any]], Sequence[Sequence[Any]]], u: Sequence[float]
) -> list[list[list[float]]]:
    """Christoffel symbols of a 2D metric; ``result[k][i][j]`` is Γ^{k+1}_{i+1 j+1}.

    ``Γ^k_ij = ½ g^{kl} (∂_i g_jl + ∂_j g_il - ∂_l g_ij)``
    """
    u = [float(x) for x in u]
    g = to_float([list(row) for row in metric(u)])
    if abs(g[0][0] * g[1][1] - g[0][1] * g[1][0]) <= SURFACE_TOL:
        raise ValueError("metric is singular")
    gi = _inv2(g)
    dg = [to_float(jvp(metric, u, e)) for e in _E]  # dg[l][i][j] = ∂_l g_ij
    return [
        [
            [
                0.5 * sum(gi[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]) for l in range(2))
                for j in range(2)
            ]
            for i in range(2)
        ]
        for k in range(2)
    ]


def first_form_metric(surface: ClassicalSurface) -> Callable[[Sequence[Any]], list[list[Any]]]:
    return lambda u: _surface_frame(surface, u)["g"]


__all__ = [
    "LIE",
    "MODES",
    "STANDARD",
    "ClassicalSurface",
    "CodazziMatrices",
    "DegenerateSurfaceError",
    "FrameDecomposition",
    "SingularFrameError",
    "SurfaceForms",
    "a_matrix_field",
    "assemble_A_matrices",
    "christoffel_from_metric",
    "codazzi_curvature",
    "codazzi_residual",
    "cylinder",
    "decompose_in_frame",
    "derivation_equations",
    "first_form_metric",
    "frame_a_matrices",
    "plane",
    "sphere",
    "structure_a_matrices",
    "surface_a_matrices",
    "surface_forms",
    "torus",
]
