"""Horizontal filtration and the holonomy flag R⁰ ⊂ R¹ of a 3D structure.

For the horizontal pair (X, Y) the curvature operator R(X,Y) is applied to
a frame of each filtration level:

* R¹ = span{R(X,Y)X, R(X,Y)Y, R(X,Y)Z};
* R⁰ in ``projection`` mode spans the span{X, Y}-parts of R(X,Y)X and
  R(X,Y)Y; in ``intersection`` mode it is span{R(X,Y)v : v ∈ H⁰} ∩ H⁰.

The two readings of R⁰ differ as soon as alpha or beta is nonzero; both are
kept.  Note that R(X,Y)Z = 2(beta R(X,Y)X - alpha R(X,Y)Y), so dim R¹ ≤ 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from . import linalg
from .algebra import BASIS, AlgebraElement, X, Y
from .liealg_connection import ConnectionTable, connection_table, curvature
from .model_groups import StructureConstants

PROJECTION = "projection"
INTERSECTION = "intersection"
FLAG_MODES = (PROJECTION, INTERSECTION)


@dataclass(frozen=True)
class Filtration:
    levels: tuple  # levels[i] = independent basis of H^i
    steps: int | None  # first i with H^i = whole algebra, None if never

    @property
    def H0(self) -> tuple:
        return self.levels[0]

    @property
    def H1(self) -> tuple:
        return self.levels[1] if len(self.levels) > 1 else self.levels[0]

    @property
    def bracket_generating(self) -> bool:
        return self.steps is not None


def horizontal_filtration(sc: StructureConstants, max_steps: int = 3) -> Filtration:
    """H⁰ = span{X, Y}, H^{i} = [H⁰, H^{i-1}] + H^{i-1} until it stops growing."""
    h0 = [X, Y]
    levels = [tuple(h0)]
    current = list(h0)
    steps = 0 if len(current) == 3 else None
    for i in range(1, max_steps + 1):
        if steps is not None:
            break
        candidates = current + [sc.bracket(a, b) for a in h0 for b in current]
        nxt = [AlgebraElement(tuple(v)) for v in linalg.independent_subset([list(c) for c in candidates])]
        levels.append(tuple(nxt))
        if len(nxt) == 3:
            steps = i
        elif len(nxt) == len(current):
            break
        current = nxt
    return Filtration(tuple(levels), steps)


@dataclass(frozen=True)
class HolonomyFlag:
    """Spanning sets of R⁰ and R¹ (zero vectors dropped) and their ranks."""

    R0_basis: tuple
    R1_basis: tuple
    dims: tuple[int, int]
    mode: str
    pair: tuple[str, str] = ("X", "Y")


def _nonzero(vectors) -> tuple:
    return tuple(v for v in vectors if linalg.rank([list(v)]) > 0)


def _dims(r0, r1) -> tuple[int, int]:
    return (linalg.rank([list(v) for v in r0]), linalg.rank([list(v) for v in r1]))


def curvature_images(ct: ConnectionTable, a: AlgebraElement = X, b: AlgebraElement = Y) -> tuple:
    """``(R(a,b)X, R(a,b)Y, R(a,b)Z)``."""
    return tuple(curvature(ct, a, b, v) for v in BASIS)


def flag_spaces(ct: ConnectionTable, mode: str = PROJECTION) -> HolonomyFlag:
    if mode not in FLAG_MODES:
        raise ValueError(f"mode must be one of {FLAG_MODES}, got {mode!r}")
    rx, ry, rz = curvature_images(ct)
    r1 = _nonzero((rx, ry, rz))
    if mode == PROJECTION:
        r0 = _nonzero(AlgebraElement((v[0], v[1], v[2] * 0)) for v in (rx, ry))
    else:
        h0 = [list(X), list(Y)]
        r0 = tuple(AlgebraElement(tuple(v)) for v in linalg.intersect([list(rx), list(ry)], h0))
    return HolonomyFlag(r0, r1, _dims(r0, r1), mode)


def holonomy_flag(ct: ConnectionTable, mode: str = PROJECTION) -> dict[tuple[str, str], HolonomyFlag]:
    """Flags indexed by horizontal pair; with dim H⁰ = 2 only (X, Y) occurs."""
    return {("X", "Y"): flag_spaces(ct, mode)}


def flag_dimensions(chi: Any, kappa: Any, alpha: Any = 0, beta: Any = 0, mode: str = PROJECTION) -> tuple[int, int]:
    return flag_spaces(connection_table(chi, kappa, alpha, beta), mode).dims


def contains(outer, inner) -> bool:
    """Whether every vector of ``inner`` lies in span(``outer``)."""
    outer_rows = [list(v) for v in outer]
    base = linalg.rank(outer_rows)
    return all(linalg.rank(outer_rows + [list(v)]) == base for v in inner)
