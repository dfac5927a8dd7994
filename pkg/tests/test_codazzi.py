import math
import random
from fractions import Fraction

import numpy as np
import pytest

from oracles import richardson
from subflag import codazzi
from subflag.chart_fields import HEISENBERG, SU2, ChartPoint, ChartVector, directional_derivative, evaluate_field
from subflag.checks import su2_closed_form_coefficients
from subflag.dual import sin
from subflag.model_groups import cartan_structure, heisenberg_frame, su2_frame
from subflag.sampling import sample_points

H, S = heisenberg_frame(), su2_frame()
PT = ChartPoint(SU2, (0.3, 0.4, 0.5))
SU2_R = np.array([[0, -4, 0], [4, 0, 0], [0, 0, 0]])


def test_decompose_in_frame():
    p = ChartPoint(HEISENBERG, (0.4, 1.1, -2))
    assert codazzi.decompose_in_frame(evaluate_field(H.X, p), H, p) == pytest.approx((1, 0, 0))
    assert codazzi.decompose_in_frame(ChartVector(HEISENBERG, (0, 0, 0.5)), H, p) == pytest.approx((0, 0, 0.5))
    got = codazzi.decompose_in_frame(directional_derivative(S.X, S.X, PT), S, PT)
    c = su2_closed_form_coefficients(0.4, 0.5)
    assert got == pytest.approx((c["G1_11"], c["G2_11"], c["b_11"]), abs=1e-12)


def test_heisenberg_coefficients():
    dec = codazzi.derivation_equations(H, ChartPoint(HEISENBERG, (1.0, -2.0, 0.3)))
    assert np.all(np.array(dec.gamma) == 0)
    np.testing.assert_allclose(np.array(dec.b), [[0, 0.5], [-0.5, 0]], rtol=0, atol=1e-12)
    assert np.all(np.array(dec.weingarten) == 0)
    a = codazzi.assemble_A_matrices(dec)
    np.testing.assert_allclose(np.array(a.A1), [[0, 0, 0], [0, 0, 0.5], [0, 0, 0]], rtol=0, atol=1e-12)
    np.testing.assert_allclose(np.array(a.A2), [[0, 0, -0.5], [0, 0, 0], [0, 0, 0]], rtol=0, atol=1e-12)


def test_su2_b_at_sample_point():
    b = codazzi.derivation_equations(S, PT).b
    s, c = math.sin(1), math.cos(1)
    np.testing.assert_allclose(np.array(b), [[-2 * c * s, 2 * s * s], [-2 * c * c, 2 * s * c]], rtol=0, atol=1e-12)


def test_su2_coefficients_and_symmetry():
    for p in sample_points(SU2, 50, seed=4):
        dec = codazzi.derivation_equations(S, p)
        g, b = dec.gamma, dec.b
        want = su2_closed_form_coefficients(p.coords[1], p.coords[2])
        got = {"G1_11": g[0][0][0], "G2_11": g[1][0][0], "G1_12": g[0][0][1], "G2_12": g[1][0][1],
               "G1_22": g[0][1][1], "G2_22": g[1][1][1], "b_11": b[0][0], "b_12": b[0][1],
               "b_21": b[1][0], "b_22": b[1][1]}
        for k in want:
            assert got[k] == pytest.approx(want[k], abs=1e-8), k
        for k in range(2):
            assert g[k][0][1] == pytest.approx(g[k][1][0], abs=1e-10)
        assert b[0][1] - b[1][0] == pytest.approx(2, abs=1e-9)


def test_lie_mode_rows():
    for frame in (H, S):
        p = sample_points(frame.chart_id, 1, seed=8)[0]
        a1, a2 = codazzi.frame_a_matrices(frame, p.coords, codazzi.LIE)
        assert a1[0] == [0, 0, 0] and a2[1] == [0, 0, 0]
    a = codazzi.assemble_A_matrices(cartan_structure(Fraction(3)))
    assert a.A1 == ((0, 0, 0), (0, 0, 2), (0, -3, 0))
    assert a.A2 == ((0, 0, -2), (0, 0, 0), (3, 0, 0))


def test_zero_decomposition():
    zero = codazzi.FrameDecomposition.from_a_matrices([[0] * 3] * 3, [[0] * 3] * 3, None, codazzi.STANDARD)
    a = codazzi.assemble_A_matrices(zero)
    assert all(v == 0 for m in (a.A1, a.A2) for row in m for v in row)


def test_curvatures():
    for p in sample_points(HEISENBERG, 20, seed=6):
        assert np.abs(codazzi.codazzi_curvature(H, p)).max() <= 1e-12
    rs = np.array([codazzi.codazzi_curvature(S, p) for p in sample_points(SU2, 20, seed=6)])
    assert np.abs(rs - SU2_R).max() <= 1e-8
    assert np.abs(np.array(codazzi.codazzi_curvature(S, PT, codazzi.LIE)) - SU2_R).max() <= 1e-8
    for rho in (1, Fraction(-5, 2)):
        r = codazzi.codazzi_curvature(cartan_structure(rho), mode=codazzi.LIE)
        assert r == [[0, -2 * rho, 0], [2 * rho, 0, 0], [0, 0, 0]]


def test_top_block_antisymmetric():
    for r in [codazzi.codazzi_curvature(S, p) for p in sample_points(SU2, 10, seed=1)] + [
        codazzi.codazzi_curvature(cartan_structure(2), mode=codazzi.LIE)
    ]:
        assert r[0][1] == pytest.approx(-r[1][0], abs=1e-8)
        assert r[0][0] == pytest.approx(0, abs=1e-8) and r[1][1] == pytest.approx(0, abs=1e-8)


def test_curvature_derivative_against_finite_differences():
    # D_Y A1 - D_X A2 by differencing the A-matrix fields directly
    c = np.array(PT.coords)
    a1 = lambda q: np.array(codazzi.frame_a_matrices(S, list(q))[0], float)
    a2 = lambda q: np.array(codazzi.frame_a_matrices(S, list(q))[1], float)
    d = richardson(a1, c, S.Y.rule(c)) - richardson(a2, c, S.X.rule(c))
    r = d + a1(c) @ a2(c) - a2(c) @ a1(c)
    assert np.abs(r - SU2_R).max() <= 1e-6


def test_errors():
    with pytest.raises(ValueError):
        codazzi.codazzi_curvature(cartan_structure(1))
    with pytest.raises(ValueError):
        codazzi.codazzi_curvature(S)
    with pytest.raises(ValueError):
        codazzi.derivation_equations(S, PT, mode="bogus")


# --- classical surfaces


def test_surfaces_satisfy_codazzi():
    rng = random.Random(0)
    assert np.abs(codazzi.codazzi_residual(codazzi.sphere(), (0.5, 0.8))).max() <= 1e-6
    for _ in range(20):
        u = (rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi))
        assert np.abs(codazzi.codazzi_residual(codazzi.torus(2.0, 1.0), u)).max() <= 1e-6
    a1, a2 = codazzi.surface_a_matrices(codazzi.plane(), (0.3, -0.2))
    assert all(v == 0 for m in (a1, a2) for row in m for v in row)
    assert all(v == 0 for row in codazzi.codazzi_residual(codazzi.plane(), (0.3, -0.2)) for v in row)


def test_fundamental_forms():
    f = codazzi.surface_forms(codazzi.sphere(), (1.1, 0.3))
    assert f.gaussian_curvature == pytest.approx(1, abs=1e-8)
    assert codazzi.surface_forms(codazzi.sphere(2.0), (1.1, 0.3)).gaussian_curvature == pytest.approx(0.25)
    p = codazzi.surface_forms(codazzi.plane(), (0.1, 0.2))
    assert p.gaussian_curvature == 0 and np.all(np.array(p.second) == 0)
    c = codazzi.surface_forms(codazzi.cylinder(1.0), (0.4, 1.0))
    assert c.gaussian_curvature == pytest.approx(0, abs=1e-12)
    assert np.abs(np.array(c.second)).max() == pytest.approx(1)
    # torus with tube angle u¹: K = cos u¹ / (r (R + r cos u¹))
    u = (0.3, 0.9)
    k = codazzi.surface_forms(codazzi.torus(2.0, 1.0), u).gaussian_curvature
    assert k == pytest.approx(math.cos(u[0]) / (2 + math.cos(u[0])), rel=1e-10)


def test_christoffel():
    for g in ([[1.0, 0.0], [0.0, 1.0]], [[2.0, 0.3], [0.3, 5.0]]):
        gam = codazzi.christoffel_from_metric(lambda u, g=g: g, (0.4, 0.2))
        assert np.all(np.array(gam) == 0)
    gam = codazzi.christoffel_from_metric(lambda u: [[1.0, 0.0], [0.0, sin(u[0]) ** 2]], (0.7, 0.0))
    # hand expansion: Γ²₁₂ = cot u¹, Γ¹₂₂ = -sin u¹ cos u¹, all others zero
    assert gam[1][0][1] == pytest.approx(1 / math.tan(0.7), abs=1e-8)
    assert gam[1][1][0] == pytest.approx(1 / math.tan(0.7), abs=1e-8)
    assert gam[0][1][1] == pytest.approx(-math.sin(0.7) * math.cos(0.7), abs=1e-8)
    assert gam[0][0][0] == 0 and gam[1][1][1] == 0


def test_christoffel_from_surface_metric():
    gam = codazzi.christoffel_from_metric(codazzi.first_form_metric(codazzi.sphere()), (0.7, 0.1))
    assert gam[1][0][1] == pytest.approx(1 / math.tan(0.7), abs=1e-8)
