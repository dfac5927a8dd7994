"""Tagged forward-mode dual numbers.

Each call to :func:`jvp` draws a fresh tag, so derivatives nest without
perturbation confusion: a ``Dual`` with a higher tag always wraps values
carrying lower tags.
"""

from __future__ import annotations

import itertools
import math
from typing import Any, Callable, Sequence

_tags = itertools.count(1)


class Dual:
    """Number ``real + eps * e`` where ``e`` is the infinitesimal named by ``tag``."""

    __slots__ = ("real", "eps", "tag")

    def __init__(self, real: Any, eps: Any, tag: int) -> None:
        self.real = real
        self.eps = eps
        self.tag = tag

    def __repr__(self) -> str:
        return f"Dual({self.real!r}, {self.eps!r}, tag={self.tag})"

    def __neg__(self) -> Dual:
        return Dual(-self.real, -self.eps, self.tag)

    def __pos__(self) -> Dual:
        return self

    def __add__(self, other: Any) -> Dual:
        t = _top(self, other)
        a, b = _split(self, t)
        c, d = _split(other, t)
        return Dual(a + c, b + d, t)

    __radd__ = __add__

    def __sub__(self, other: Any) -> Dual:
        t = _top(self, other)
        a, b = _split(self, t)
        c, d = _split(other, t)
        return Dual(a - c, b - d, t)

    def __rsub__(self, other: Any) -> Dual:
        t = _top(self, other)
        a, b = _split(other, t)
        c, d = _split(self, t)
        return Dual(a - c, b - d, t)

    def __mul__(self, other: Any) -> Dual:
        t = _top(self, other)
        a, b = _split(self, t)
        c, d = _split(other, t)
        return Dual(a * c, a * d + b * c, t)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> Dual:
        t = _top(self, other)
        a, b = _split(self, t)
        c, d = _split(other, t)
        return Dual(a / c, (b * c - a * d) / (c * c), t)

    def __rtruediv__(self, other: Any) -> Dual:
        t = _top(self, other)
        a, b = _split(other, t)
        c, d = _split(self, t)
        return Dual(a / c, (b * c - a * d) / (c * c), t)

    def __pow__(self, n: int) -> Dual:
        if not isinstance(n, int):
            raise TypeError("only integer powers of dual numbers are supported")
        if n == 0:
            return Dual(self.real**0, self.eps * 0, self.tag)
        return Dual(self.real**n, n * self.real ** (n - 1) * self.eps, self.tag)


def _top(x: Any, y: Any) -> int:
    tx = x.tag if isinstance(x, Dual) else 0
    ty = y.tag if isinstance(y, Dual) else 0
    return tx if tx > ty else ty


def _split(x: Any, tag: int) -> tuple[Any, Any]:
    if isinstance(x, Dual) and x.tag == tag:
        return x.real, x.eps
    return x, 0.0


def primal(x: Any) -> float:
    """Strip every infinitesimal layer and return the underlying float."""
    while isinstance(x, Dual):
        x = x.real
    return x


def _lift(fn: Callable[[float], float], dfn: Callable[[Any], Any]) -> Callable[[Any], Any]:
    def lifted(x: Any) -> Any:
        if isinstance(x, Dual):
            return Dual(lifted(x.real), dfn(x.real) * x.eps, x.tag)
        return fn(x)

    lifted.__name__ = fn.__name__
    return lifted


sin = _lift(math.sin, lambda a: cos(a))
cos = _lift(math.cos, lambda a: -sin(a))
sqrt = _lift(math.sqrt, lambda a: 0.5 / sqrt(a))


def tangent(y: Any, tag: int) -> Any:
    """Coefficient of the infinitesimal ``tag`` in ``y`` (0.0 when ``y`` is constant in it)."""
    if isinstance(y, Dual) and y.tag == tag:
        return y.eps
    return 0.0


def jvp(fn: Callable[[Sequence[Any]], Any], x: Sequence[Any], v: Sequence[Any]) -> Any:
    """Directional derivative of ``fn`` at ``x`` along ``v``.

    ``fn`` maps a coordinate sequence to a scalar or to an arbitrarily nested
    list/tuple of scalars; the result has the same nesting. ``x`` and ``v``
    may themselves hold dual numbers, which is how second derivatives are
    taken.
    """
    tag = next(_tags)
    out = fn([Dual(xi, vi, tag) for xi, vi in zip(x, v)])
    return _map(lambda y: tangent(y, tag), out)


def _map(f: Callable[[Any], Any], tree: Any) -> Any:
    if isinstance(tree, (list, tuple)):
        return [_map(f, t) for t in tree]
    return f(tree)


def to_float(tree: Any) -> Any:
    """Nested lists of floats from a nested structure of (possibly dual) scalars."""
    return _map(lambda y: float(primal(y)), tree)
