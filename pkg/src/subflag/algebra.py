"""Elements of a 3D Lie algebra over the ordered basis (X, Y, Z).

Coefficients are either all exact (``Fraction``) or all float; ints are
promoted to ``Fraction`` so integer inputs stay on the exact path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Any, Iterable

BASIS_NAMES = ("X", "Y", "Z")


def coerce(value: Any) -> Fraction | float:
    """Promote ints/Fractions to ``Fraction`` and everything else to ``float``."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, Rational):
        return Fraction(value)
    return float(value)


def coerce_all(values: Iterable[Any]) -> tuple:
    """Coerce a parameter tuple onto one arithmetic path: exact only if every entry is rational."""
    vals = tuple(values)
    if all(isinstance(v, Rational) and not isinstance(v, bool) for v in vals):
        return tuple(Fraction(v) for v in vals)
    return tuple(float(v) for v in vals)


@dataclass(frozen=True)
class AlgebraElement:
    coeffs: tuple

    def __post_init__(self) -> None:
        c = coerce_all(self.coeffs)
        if len(c) != 3:
            raise ValueError("algebra elements have exactly 3 coefficients")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def basis(cls, index: int) -> AlgebraElement:
        return cls(tuple(int(i == index) for i in range(3)))

    @classmethod
    def zero(cls) -> AlgebraElement:
        return cls((0, 0, 0))

    def __getitem__(self, i: int):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(tuple(-a for a in self.coeffs))

    def __mul__(self, s: Any) -> AlgebraElement:
        s = coerce(s)
        return AlgebraElement(tuple(s * a for a in self.coeffs))

    __rmul__ = __mul__

    @property
    def is_exact(self) -> bool:
        return isinstance(self.coeffs[0], Fraction)

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(abs(a) <= tol for a in self.coeffs)

    def norm_inf(self) -> float:
        return float(max(abs(a) for a in self.coeffs))

    def __str__(self) -> str:
        terms = [f"{a}{n}" for a, n in zip(self.coeffs, BASIS_NAMES) if a != 0]
        return " + ".join(terms) if terms else "0"


X = AlgebraElement.basis(0)
Y = AlgebraElement.basis(1)
Z = AlgebraElement.basis(2)
BASIS = (X, Y, Z)
