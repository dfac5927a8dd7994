import math

import pytest
from hypothesis import given, strategies as st

from subflag.dual import Dual, cos, jvp, primal, sin, sqrt, to_float

finite = st.floats(-3, 3, allow_nan=False)


@given(finite, finite)
def test_product_rule(x, y):
    d = jvp(lambda c: c[0] * c[1] * c[0], [x, y], [1.0, 0.0])
    assert d == pytest.approx(2 * x * y, abs=1e-12)


@given(st.floats(-3, 3).filter(lambda t: abs(t) > 0.1))
def test_quotient_and_power(x):
    assert jvp(lambda c: 1 / c[0], [x], [1.0]) == pytest.approx(-1 / x**2)
    assert jvp(lambda c: c[0] ** 3, [x], [1.0]) == pytest.approx(3 * x**2)


def test_elementary_functions():
    x = 0.7
    assert jvp(lambda c: sin(c[0]), [x], [1.0]) == pytest.approx(math.cos(x))
    assert jvp(lambda c: cos(c[0]), [x], [1.0]) == pytest.approx(-math.sin(x))
    assert jvp(lambda c: sqrt(c[0]), [x], [1.0]) == pytest.approx(0.5 / math.sqrt(x))
    assert sin(x) == math.sin(x)


def test_nested_derivatives_do_not_confuse_tags():
    # d/dx [ x * d/dy (x + y) ] = 1, the classic perturbation-confusion trap
    def inner(x):
        return x * jvp(lambda c: x + c[0], [1.0], [1.0])

    assert jvp(lambda c: inner(c[0]), [2.0], [1.0]) == 1.0


def test_second_derivative():
    d2 = jvp(lambda c: jvp(lambda q: sin(q[0]) ** 2, c, [1.0]), [0.3], [1.0])
    assert d2 == pytest.approx(2 * math.cos(0.6))


def test_structures_and_primal():
    out = jvp(lambda c: [[c[0], 2 * c[0]], (c[0] * c[0],)], [3.0], [1.0])
    assert to_float(out) == [[1.0, 2.0], [6.0]]
    assert primal(Dual(Dual(1.5, 1.0, 1), 2.0, 2)) == 1.5
