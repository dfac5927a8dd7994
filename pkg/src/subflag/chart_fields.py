"""Vector fields on 3D coordinate charts, differentiated with dual numbers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .dual import jvp, to_float

HEISENBERG = "heisenberg"
SU2 = "su2"

SU2_SINGULAR_TOL = 1e-8


class ChartMismatchError(ValueError):
    pass


class SingularPointError(ValueError):
    pass


@dataclass(frozen=True)
class ChartPoint:
    chart_id: str
    coords: tuple[float, float, float]

    def __post_init__(self) -> None:
        coords = tuple(float(c) for c in self.coords)
        if len(coords) != 3:
            raise ValueError(f"chart point needs 3 coordinates, got {len(coords)}")
        if not all(math.isfinite(c) for c in coords):
            raise ValueError(f"non-finite coordinates {coords}")
        object.__setattr__(self, "coords", coords)


@dataclass(frozen=True)
class ChartVector:
    chart_id: str
    components: tuple[float, float, float]

    def __post_init__(self) -> None:
        comps = tuple(float(c) for c in self.components)
        if len(comps) != 3 or not all(math.isfinite(c) for c in comps):
            raise ValueError(f"invalid components {comps}")
        object.__setattr__(self, "components", comps)


Rule = Callable[[Sequence[Any]], Sequence[Any]]


@dataclass(frozen=True)
class VectorField:
    """A smooth field given by ``rule(coords) -> 3 components``.

    ``rule`` must only use arithmetic and the functions in :mod:`subflag.dual`
    so that it can be evaluated on dual-number coordinates.
    """

    chart_id: str
    rule: Rule
    name: str = ""


@dataclass(frozen=True)
class MatrixField:
    chart_id: str
    rule: Callable[[Sequence[Any]], Sequence[Sequence[Any]]]
    name: str = ""


def constant_field(chart_id: str, components: Sequence[float], name: str = "") -> VectorField:
    comps = tuple(float(c) for c in components)
    return VectorField(chart_id, lambda c: comps, name)


def check_admissible(p: ChartPoint) -> None:
    """Raise :class:`SingularPointError` where the chart's frame is undefined."""
    if p.chart_id == SU2:
        theta = p.coords[1]
        if abs(math.sin(2.0 * theta)) <= SU2_SINGULAR_TOL:
            raise SingularPointError(f"sin(2*theta) vanishes at theta={theta!r}")


def _check(p: ChartPoint, *fields: VectorField | MatrixField) -> None:
    for f in fields:
        if f.chart_id != p.chart_id:
            raise ChartMismatchError(f"field {f.name or f.chart_id!r} lives on {f.chart_id!r}, point on {p.chart_id!r}")
    check_admissible(p)


# generic kernels: coords may be floats or dual numbers


def derive(u: VectorField, v: VectorField, coords: Sequence[Any]) -> list[Any]:
    """Components of δ_u v at ``coords``."""
    return jvp(v.rule, coords, u.rule(coords))


def bracket(u: VectorField, v: VectorField, coords: Sequence[Any]) -> list[Any]:
    duv = derive(u, v, coords)
    dvu = derive(v, u, coords)
    return [a - b for a, b in zip(duv, dvu)]


# public float-valued operations


def evaluate_field(field: VectorField, p: ChartPoint) -> ChartVector:
    _check(p, field)
    return ChartVector(p.chart_id, tuple(to_float(list(field.rule(p.coords)))))


def directional_derivative(u: VectorField, v: VectorField, p: ChartPoint) -> ChartVector:
    """Componentwise derivative of ``v`` along ``u(p)``."""
    _check(p, u, v)
    return ChartVector(p.chart_id, tuple(to_float(derive(u, v, p.coords))))


def lie_bracket(u: VectorField, v: VectorField, p: ChartPoint) -> ChartVector:
    _check(p, u, v)
    return ChartVector(p.chart_id, tuple(to_float(bracket(u, v, p.coords))))


def matrix_directional_derivative(u: VectorField, m: MatrixField, p: ChartPoint) -> list[list[float]]:
    _check(p, u, m)
    return to_float(jvp(m.rule, p.coords, u.rule(p.coords)))


__all__ = [
    "HEISENBERG",
    "SU2",
    "ChartMismatchError",
    "ChartPoint",
    "ChartVector",
    "MatrixField",
    "SingularPointError",
    "VectorField",
    "bracket",
    "check_admissible",
    "constant_field",
    "derive",
    "directional_derivative",
    "evaluate_field",
    "lie_bracket",
    "matrix_directional_derivative",
]
