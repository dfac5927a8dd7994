"""Left-invariant connection on a 3D sub-Riemannian Lie algebra.

The brackets are ``[X,Y] = Z, [Y,Z] = (chi+kappa) X, [X,Z] = (chi-kappa) Y``
and the connection is ``∇_a b = ½[a,b] + U(a,b)`` with the symmetric term
fixed by ``U(X,Z) = alpha Z``, ``U(Y,Z) = beta Z`` and every other basis
pair (including the diagonal) mapped to zero.  That gives

    ∇_X Y =  ½Z                      ∇_Y X = -½Z
    ∇_X Z =  (chi-kappa)/2 Y + alpha Z   ∇_Z X = (kappa-chi)/2 Y + alpha Z
    ∇_Y Z =  (chi+kappa)/2 X + beta Z    ∇_Z Y = -(kappa+chi)/2 X + beta Z
    ∇_X X = ∇_Y Y = ∇_Z Z = 0

Fields are left-invariant with constant coefficients, so ∇ is bilinear and
no Leibniz terms appear.  Integer/Fraction parameters keep everything exact.
"""

from __future__ import annotations

import dataclasses
import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .algebra import BASIS, AlgebraElement, X, Y, Z, coerce_all
from .linalg import SingularMatrixError, det3, solve
from .model_groups import StructureConstants, bilinear, general_structure

HORIZONTAL_TOL = 1e-12


@dataclass(frozen=True)
class ConnectionTable:
    chi: Any
    kappa: Any
    alpha: Any
    beta: Any
    # table[i][j] = ∇_{e_i} e_j
    table: tuple

    @functools.cached_property
    def structure(self) -> StructureConstants:
        return general_structure(self.chi, self.kappa)

    @property
    def params(self) -> tuple:
        return (self.chi, self.kappa, self.alpha, self.beta)

    @property
    def is_exact(self) -> bool:
        return isinstance(self.chi, Fraction)

    def with_entry(self, i: int, j: int, value: AlgebraElement) -> ConnectionTable:
        """Copy with ``∇_{e_i} e_j`` replaced (used to probe the checks with broken tables)."""
        rows = [list(r) for r in self.table]
        rows[i][j] = value
        return dataclasses.replace(self, table=tuple(tuple(r) for r in rows))


def connection_table(chi: Any, kappa: Any, alpha: Any = 0, beta: Any = 0) -> ConnectionTable:
    chi, kappa, alpha, beta = coerce_all((chi, kappa, alpha, beta))
    half = Fraction(1, 2) if isinstance(chi, Fraction) else 0.5
    zero = X * 0
    xz = Y * ((chi - kappa) * half) + Z * alpha
    zx = Y * ((kappa - chi) * half) + Z * alpha
    yz = X * ((chi + kappa) * half) + Z * beta
    zy = X * (-(kappa + chi) * half) + Z * beta
    table = (
        (zero, Z * half, xz),
        (-(Z * half), zero, yz),
        (zx, zy, zero),
    )
    return ConnectionTable(chi, kappa, alpha, beta, table)


def bracket(sc: StructureConstants, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return sc.bracket(a, b)


def nabla(ct: ConnectionTable, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """``∇_a b`` by bilinear extension of the table."""
    return bilinear(ct.table, a, b)


def torsion(ct: ConnectionTable, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return nabla(ct, a, b) - nabla(ct, b, a) - ct.structure.bracket(a, b)


def curvature(ct: ConnectionTable, a: AlgebraElement, b: AlgebraElement, c: AlgebraElement) -> AlgebraElement:
    """``R(a,b)c = ∇_a ∇_b c - ∇_b ∇_a c - ∇_[a,b] c``."""
    return (
        nabla(ct, a, nabla(ct, b, c))
        - nabla(ct, b, nabla(ct, a, c))
        - nabla(ct, ct.structure.bracket(a, b), c)
    )


def horizontal_product(u: AlgebraElement, v: AlgebraElement) -> Any:
    """⟨u, v⟩₀: X, Y orthonormal and Z formally orthogonal to everything."""
    return u[0] * v[0] + u[1] * v[1]


def _is_horizontal(v: AlgebraElement) -> bool:
    return v[2] == 0 if v.is_exact else abs(v[2]) <= HORIZONTAL_TOL


def metric_parallel_defect(ct: ConnectionTable, a: AlgebraElement, b: AlgebraElement, c: AlgebraElement) -> Any:
    """``⟨∇_a b, c⟩₀ + ⟨b, ∇_a c⟩₀`` for horizontal a, b, c."""
    for name, v in (("a", a), ("b", b), ("c", c)):
        if not _is_horizontal(v):
            raise ValueError(f"{name} = {v} is not horizontal")
    return horizontal_product(nabla(ct, a, b), c) + horizontal_product(b, nabla(ct, a, c))


# ------------------------------------------------------------- metrics


@dataclass(frozen=True)
class CandidateMetric:
    """Symmetric form on (X, Y, Z) restricting to the identity on span{X, Y}."""

    xz: Any = 0
    yz: Any = 0
    zz: Any = 1

    def __post_init__(self) -> None:
        xz, yz, zz = coerce_all((self.xz, self.yz, self.zz))
        object.__setattr__(self, "xz", xz)
        object.__setattr__(self, "yz", yz)
        object.__setattr__(self, "zz", zz)

    @property
    def gram(self) -> list[list[Any]]:
        one, zero = self.zz**0, self.zz * 0
        return [[one, zero, self.xz], [zero, one, self.yz], [self.xz, self.yz, self.zz]]

    def __call__(self, u: AlgebraElement, v: AlgebraElement) -> Any:
        return (
            u[0] * v[0]
            + u[1] * v[1]
            + self.xz * (u[0] * v[2] + u[2] * v[0])
            + self.yz * (u[1] * v[2] + u[2] * v[1])
            + self.zz * (u[2] * v[2])
        )


def u_term_slots(m: CandidateMetric, sc: StructureConstants, a: AlgebraElement, b: AlgebraElement) -> list[Any]:
    """``⟨U(a,b), W⟩`` for W = X, Y, Z from ``2⟨U(a,b),W⟩ = ⟨[W,a],b⟩ + ⟨a,[W,b]⟩``."""
    half = Fraction(1, 2) if isinstance(m.zz, Fraction) else 0.5
    return [(m(sc.bracket(w, a), b) + m(a, sc.bracket(w, b))) * half for w in BASIS]


def u_term_from_metric(m: CandidateMetric, sc: StructureConstants, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """The U-term a metric induces, solving the Gram system against all slots."""
    g = m.gram
    if det3(g) == 0:
        raise SingularMatrixError("candidate metric is degenerate")
    return AlgebraElement(tuple(solve(g, u_term_slots(m, sc, a, b))))


def prescribed_u_term(ct: ConnectionTable, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """The symmetric part ``∇_a b - ½[a,b]`` of the connection."""
    half = Fraction(1, 2) if ct.is_exact else 0.5
    return nabla(ct, a, b) - ct.structure.bracket(a, b) * half


PAIRS = (("X", "Y"), ("X", "Z"), ("Y", "Z"), ("X", "X"), ("Y", "Y"), ("Z", "Z"))
_BY_NAME = {"X": X, "Y": Y, "Z": Z}


def u_residual_slots(
    ct: ConnectionTable, m: CandidateMetric, pair: tuple[str, str] = ("X", "Y"), wanted: AlgebraElement | None = None
) -> list[Any]:
    """``⟨U_m(a,b) - U_prescribed(a,b), W⟩_m`` for W = X, Y, Z."""
    a, b = _BY_NAME[pair[0]], _BY_NAME[pair[1]]
    induced = u_term_slots(m, ct.structure, a, b)
    if wanted is None:
        wanted = prescribed_u_term(ct, a, b)
    return [s - m(wanted, w) for s, w in zip(induced, BASIS)]


@dataclass(frozen=True)
class ObstructionRow:
    metric: CandidateMetric
    uxy_slots: tuple
    max_residual: float


@dataclass(frozen=True)
class ObstructionReport:
    chi: Any
    kappa: Any
    alpha: Any
    beta: Any
    uxy_z_residual: Any
    rows: tuple

    @property
    def uxy_consistent(self) -> bool:
        """Whether some candidate could satisfy the U(X,Y) condition at all (needs chi = 0)."""
        return self.uxy_z_residual == 0

    @property
    def z_residual_is_metric_independent(self) -> bool:
        return all(r.uxy_slots[2] == self.uxy_z_residual for r in self.rows)

    @property
    def uxy_solutions(self) -> tuple:
        """Candidates whose induced U(X,Y) vanishes in every slot."""
        return tuple(r.metric for r in self.rows if all(v == 0 for v in r.uxy_slots))

    @property
    def exact_solutions(self) -> tuple:
        """Candidates reproducing the whole prescribed U-term."""
        return tuple(r.metric for r in self.rows if r.max_residual == 0)


DEFAULT_GRID = tuple(Fraction(k, 2) for k in range(-2, 3))
DEFAULT_ZZ = (Fraction(3), Fraction(4), Fraction(5), Fraction(6), Fraction(7))


def metric_obstruction(
    chi: Any,
    kappa: Any,
    alpha: Any = 0,
    beta: Any = 0,
    metrics: Iterable[CandidateMetric] | None = None,
) -> ObstructionReport:
    """Test whether any candidate metric reproduces the prescribed U-term.

    The Z-slot of the U(X,Y) residual is ``-chi`` for every candidate because
    it only involves ⟨X,X⟩ and ⟨Y,Y⟩; ``uxy_z_residual`` reports it.  Each
    row also records the worst slot residual over all basis pairs.
    """
    ct = connection_table(chi, kappa, alpha, beta)
    if metrics is None:
        metrics = [CandidateMetric(a, b, c) for a, b, c in itertools.product(DEFAULT_GRID, DEFAULT_GRID, DEFAULT_ZZ)]
    wanted = {p: prescribed_u_term(ct, _BY_NAME[p[0]], _BY_NAME[p[1]]) for p in PAIRS}
    rows = []
    for m in metrics:
        slots = {p: u_residual_slots(ct, m, p, wanted[p]) for p in PAIRS}
        uxy = slots[("X", "Y")]
        worst = max(abs(s) for p in PAIRS for s in slots[p])
        rows.append(ObstructionRow(m, tuple(uxy), float(worst)))
    z = rows[0].uxy_slots[2] if rows else u_residual_slots(ct, CandidateMetric(), ("X", "Y"))[2]
    return ObstructionReport(ct.chi, ct.kappa, ct.alpha, ct.beta, z, tuple(rows))


def basis_element(name: str) -> AlgebraElement:
    return _BY_NAME[name]


def all_basis_pairs() -> Sequence[tuple[AlgebraElement, AlgebraElement]]:
    return [(a, b) for a in BASIS for b in BASIS]
