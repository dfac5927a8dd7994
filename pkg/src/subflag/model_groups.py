"""Concrete frames (Heisenberg, SU(2)) and abstract bracket tables.

Two bracket normalizations are kept side by side and never converted:

* the Cartan family: ``[X,Y] = 2Z, [Y,Z] = rho X, [X,Z] = -rho Y``;
* the (chi, kappa) family: ``[X,Y] = Z, [Y,Z] = (chi+kappa) X, [X,Z] = (chi-kappa) Y``.

The Cartan family is usually quoted for rho in {0, -1, 1}, yet its SU(2)
frame has rho = 2, so any real rho is accepted here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

from . import dual
from .algebra import BASIS, AlgebraElement, coerce_all
from .chart_fields import HEISENBERG, SU2, VectorField


@dataclass(frozen=True)
class ModelFrame:
    name: str
    X: VectorField
    Y: VectorField
    Z: VectorField

    @property
    def chart_id(self) -> str:
        return self.X.chart_id

    @property
    def fields(self) -> tuple[VectorField, VectorField, VectorField]:
        return (self.X, self.Y, self.Z)


def heisenberg_frame() -> ModelFrame:
    """X = ∂x - (y/2)∂z, Y = ∂y + (x/2)∂z, Z = ∂z on (x, y, z)."""
    return ModelFrame(
        HEISENBERG,
        VectorField(HEISENBERG, lambda c: (1.0, 0.0, -c[1] / 2), "X"),
        VectorField(HEISENBERG, lambda c: (0.0, 1.0, c[0] / 2), "Y"),
        VectorField(HEISENBERG, lambda c: (0.0, 0.0, 1.0), "Z"),
    )


def _su2_x(c):
    _, th, ps = c
    s2t, c2t = dual.sin(2 * th), dual.cos(2 * th)
    s2p, c2p = dual.sin(2 * ps), dual.cos(2 * ps)
    return (-c2p / s2t, s2p, c2t * c2p / s2t)


def _su2_y(c):
    _, th, ps = c
    s2t, c2t = dual.sin(2 * th), dual.cos(2 * th)
    s2p, c2p = dual.sin(2 * ps), dual.cos(2 * ps)
    return (s2p / s2t, c2p, -c2t * s2p / s2t)


def su2_frame() -> ModelFrame:
    """X = kq, Y = jq, Z = iq on S^3 in (∂φ, ∂θ, ∂ψ) components.

    The chart is ``q = (cosθ cos(ψ+φ), cosθ sin(ψ+φ), sinθ cos(ψ-φ), sinθ sin(ψ-φ))``;
    the frame is singular where ``sin 2θ = 0``.
    """
    return ModelFrame(
        SU2,
        VectorField(SU2, _su2_x, "X"),
        VectorField(SU2, _su2_y, "Y"),
        VectorField(SU2, lambda c: (0.0, 0.0, 1.0), "Z"),
    )


FRAMES = {HEISENBERG: heisenberg_frame, SU2: su2_frame}


def bilinear(table: Sequence[Sequence[AlgebraElement]], a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """``sum_ij a_i b_j table[i][j]``, skipping vanishing terms."""
    out = [c * 0 for c in table[0][0].coeffs]
    for i in range(3):
        if a[i] == 0:
            continue
        for j in range(3):
            w = a[i] * b[j]
            if w == 0:
                continue
            t = table[i][j].coeffs
            out = [o + w * c for o, c in zip(out, t)]
    return AlgebraElement(tuple(out))


@dataclass(frozen=True)
class StructureConstants:
    """Antisymmetric bracket table over the basis (X, Y, Z).

    ``table[i][j]`` holds the coefficients of ``[e_i, e_j]``.
    """

    table: tuple
    label: str = ""
    params: dict = field(default_factory=dict, compare=False)

    @classmethod
    def from_brackets(cls, xy, yz, xz, label: str = "", **params: Any) -> StructureConstants:
        """Build the table from [X,Y], [Y,Z], [X,Z] (each a 3-sequence of coefficients)."""
        vals = coerce_all([*xy, *yz, *xz])
        xy, yz, xz = (AlgebraElement(vals[k : k + 3]) for k in (0, 3, 6))
        zero = xy * 0
        table = (
            (zero, xy, xz),
            (-xy, zero, yz),
            (-xz, -yz, zero),
        )
        return cls(table, label, dict(params))

    def bracket(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        """Bilinear extension of the table."""
        return bilinear(self.table, a, b)

    def jacobi_residual(self) -> AlgebraElement:
        """Cyclic sum [X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]]; zero for a Lie algebra."""
        X, Y, Z = BASIS
        br = self.bracket
        return br(X, br(Y, Z)) + br(Y, br(Z, X)) + br(Z, br(X, Y))


def general_structure(chi: Any, kappa: Any) -> StructureConstants:
    """``[X,Y] = Z, [Y,Z] = (chi+kappa) X, [X,Z] = (chi-kappa) Y``."""
    chi, kappa = coerce_all((chi, kappa))
    return StructureConstants.from_brackets(
        (0, 0, 1), (chi + kappa, 0, 0), (0, chi - kappa, 0), label="general", chi=chi, kappa=kappa
    )


def cartan_structure(rho: Any) -> StructureConstants:
    """``[X,Y] = 2Z, [Y,Z] = rho X, [X,Z] = -rho Y``."""
    (rho,) = coerce_all((rho,))
    return StructureConstants.from_brackets((0, 0, 2), (rho, 0, 0), (0, -rho, 0), label="cartan", rho=rho)
