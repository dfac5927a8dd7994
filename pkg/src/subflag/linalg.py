"""Small dense linear algebra over three scalar kinds.

* generic scalars (floats or dual numbers): 3x3 determinants, Cramer solves,
  matrix products, used wherever derivatives must flow through a solve;
* exact rationals (``Fraction``): Gaussian elimination with exact zero tests;
* floats: singular values with a relative rank threshold.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Any, Sequence

import numpy as np

RANK_RTOL = 1e-10


class SingularMatrixError(ValueError):
    pass


def is_exact(values: Any) -> bool:
    """True when every scalar in the (nested) input is an int or Fraction."""
    if isinstance(values, (list, tuple)):
        return all(is_exact(v) for v in values)
    return isinstance(values, Rational) and not isinstance(values, bool)


def det3(m: Sequence[Sequence[Any]]) -> Any:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def cramer3(m: Sequence[Sequence[Any]], rhs: Sequence[Any], det: Any = None) -> list[Any]:
    """Solve ``m @ x = rhs`` for a 3x3 system by Cramer's rule (no pivoting, any scalar type)."""
    d = det3(m) if det is None else det
    out = []
    for col in range(3):
        mc = [[rhs[r] if c == col else m[r][c] for c in range(3)] for r in range(3)]
        out.append(det3(mc) / d)
    return out


def matmul(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> list[list[Any]]:
    n, k, m = len(a), len(b), len(b[0])
    return [[sum((a[i][l] * b[l][j] for l in range(1, k)), a[i][0] * b[0][j]) for j in range(m)] for i in range(n)]


def commutator(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> list[list[Any]]:
    ab, ba = matmul(a, b), matmul(b, a)
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]


def _rref(rows: Sequence[Sequence[Any]]) -> tuple[list[list[Fraction]], list[int]]:
    m = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def _svd_tol(s: np.ndarray) -> float:
    top = float(s[0]) if s.size else 0.0
    return RANK_RTOL * max(top, 1.0)


def rank(vectors: Sequence[Sequence[Any]]) -> int:
    """Rank of a list of vectors: exact for rationals, thresholded SVD otherwise."""
    if not vectors:
        return 0
    if is_exact(vectors):
        return len(_rref(vectors)[1])
    s = np.linalg.svd(np.asarray(vectors, dtype=float), compute_uv=False)
    return int(np.sum(s > _svd_tol(s)))


def nullspace(rows: Sequence[Sequence[Any]], ncols: int) -> list[list[Any]]:
    """Basis of ``{x : rows @ x = 0}``."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    if is_exact(rows):
        m, pivots = _rref(rows)
        free = [c for c in range(ncols) if c not in pivots]
        basis = []
        for f in free:
            x = [Fraction(0)] * ncols
            x[f] = Fraction(1)
            for i, pc in enumerate(pivots):
                x[pc] = -m[i][f]
            basis.append(x)
        return basis
    a = np.asarray(rows, dtype=float)
    _, s, vt = np.linalg.svd(a)
    r = int(np.sum(s > _svd_tol(s)))
    return [list(map(float, v)) for v in vt[r:]]


def independent_subset(vectors: Sequence[Sequence[Any]]) -> list[Sequence[Any]]:
    """Greedy left-to-right selection of a maximal independent subset."""
    kept: list[Sequence[Any]] = []
    for v in vectors:
        if rank(kept + [v]) > len(kept):
            kept.append(v)
    return kept


def intersect(u: Sequence[Sequence[Any]], v: Sequence[Sequence[Any]]) -> list[list[Any]]:
    """Spanning set of ``span(u) ∩ span(v)`` (independent)."""
    if not u or not v:
        return []
    dim = len(u[0])
    # columns [u_1 .. u_p, -v_1 .. -v_q]
    rows = [[ui[k] for ui in u] + [-vj[k] for vj in v] for k in range(dim)]
    out = []
    for coeffs in nullspace(rows, len(u) + len(v)):
        w = [sum((c * ui[k] for c, ui in zip(coeffs, u)), 0 * u[0][k]) for k in range(dim)]
        out.append(w)
    return [list(w) for w in independent_subset(out)]


def solve(a: Sequence[Sequence[Any]], b: Sequence[Any]) -> list[Any]:
    """Solve a square system, exactly when all inputs are rational."""
    n = len(a)
    if is_exact([a, list(b)]):
        m, pivots = _rref([list(row) + [bi] for row, bi in zip(a, b)])
        if pivots[:n] != list(range(n)):
            raise SingularMatrixError("matrix is singular")
        return [m[i][n] for i in range(n)]
    arr = np.asarray(a, dtype=float)
    if np.linalg.matrix_rank(arr) < n:
        raise SingularMatrixError("matrix is singular")
    return [float(x) for x in np.linalg.solve(arr, np.asarray(b, dtype=float))]
