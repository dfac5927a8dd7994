from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from subflag.algebra import AlgebraElement, X, Y, Z
from subflag.liealg_connection import (
    CandidateMetric,
    connection_table,
    curvature,
    metric_obstruction,
    metric_parallel_defect,
    nabla,
    torsion,
    u_residual_slots,
    u_term_slots,
)
from subflag.model_groups import cartan_structure, general_structure

BASIS = (X, Y, Z)
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
params = st.tuples(rationals, rationals, rationals, rationals)
half = Fraction(1, 2)


def test_table_entries():
    ct = connection_table(1, 2, 0, 5)
    assert nabla(ct, X, Y) == Z * half
    assert nabla(ct, Y, Z) == X * Fraction(3, 2) + Z * 5
    assert nabla(ct, X, X).is_zero()
    assert nabla(ct, Z, Z).is_zero()


def test_torsion_examples():
    ct = connection_table(1, 2, 7)
    assert torsion(ct, X, Y).is_zero()
    # hand expansion: ((chi-kappa)/2 - (kappa-chi)/2 - (chi-kappa)) Y = 0
    assert torsion(ct, X, Z).is_zero()
    for a in BASIS:
        assert torsion(ct, a, a).is_zero()


@settings(max_examples=200, deadline=None)
@given(params)
def test_torsion_vanishes_exactly(p):
    ct = connection_table(*p)
    for a, b in product(BASIS, repeat=2):
        t = torsion(ct, a, b)
        assert t.is_exact and all(c == 0 for c in t)


@settings(max_examples=200, deadline=None)
@given(params)
def test_parallel_along_horizontal(p):
    ct = connection_table(*p)
    for a, b, c in product((X, Y), repeat=3):
        assert metric_parallel_defect(ct, a, b, c) == 0


def test_parallel_examples_and_guard():
    ct = connection_table(3, -1, 2, 2)
    assert metric_parallel_defect(ct, X, X, Y) == 0
    assert metric_parallel_defect(ct, X, Y, Y) == 0
    assert metric_parallel_defect(ct, Y, X, X) == 0
    with pytest.raises(ValueError):
        metric_parallel_defect(ct, Z, X, Y)


@settings(max_examples=100, deadline=None)
@given(params)
def test_curvature_antisymmetric_in_first_pair(p):
    ct = connection_table(*p)
    for a, b, c in product(BASIS, repeat=3):
        assert (curvature(ct, a, b, c) + curvature(ct, b, a, c)).is_zero()


@settings(max_examples=100, deadline=None)
@given(params)
def test_symmetric_part_is_u_term(p):
    ct = connection_table(*p)
    sc = ct.structure
    for a, b in product(BASIS, repeat=2):
        u_ab = nabla(ct, a, b) - sc.bracket(a, b) * half
        u_ba = nabla(ct, b, a) - sc.bracket(b, a) * half
        assert u_ab == u_ba


@settings(max_examples=200, deadline=None)
@given(params)
def test_curvature_closed_forms(p):
    chi, kappa, alpha, beta = p
    ct = connection_table(*p)
    assert curvature(ct, X, Y, X) == AlgebraElement((0, (chi - kappa) / 4, -Fraction(3, 2) * alpha))
    assert curvature(ct, X, Y, Y) == AlgebraElement(((chi + kappa) / 4, 0, -Fraction(3, 2) * beta))
    assert curvature(ct, X, Y, Z) == AlgebraElement((-alpha / 2 * (chi + kappa), beta / 2 * (chi - kappa), 0))


@given(rationals)
def test_curvature_along_xy_stays_horizontal_without_chi_alpha_beta(kappa):
    ct = connection_table(0, kappa, 0, 0)
    for c in BASIS:
        assert curvature(ct, X, Y, c)[2] == 0


def test_curvature_off_the_horizontal_pair_leaves_the_plane():
    # R(X,Z)X picks up a Z-component; the horizontal statement is specific to R(X,Y)
    ct = connection_table(0, 4, 0, 0)
    assert curvature(ct, X, Z, X) == Z * -1


def test_float_path_matches_exact():
    exact = connection_table(Fraction(1, 3), 2, Fraction(-1, 2), 1)
    approx = connection_table(1 / 3, 2.0, -0.5, 1.0)
    for a, b, c in product(BASIS, repeat=3):
        e, f = curvature(exact, a, b, c), curvature(approx, a, b, c)
        assert max(abs(float(x) - y) for x, y in zip(e, f)) <= 1e-14


# --- U-term and the metric obstruction


def test_u_term_examples():
    ident = CandidateMetric()
    assert all(s == 0 for s in u_term_slots(ident, general_structure(0, 0), X, Y))
    for chi, kappa in ((1, 3), (Fraction(-2, 3), 5)):
        slots = u_term_slots(ident, general_structure(chi, kappa), X, Y)
        assert 2 * slots[2] == -2 * chi
    for rho in (1, 2, Fraction(-7, 2)):
        assert all(s == 0 for s in u_term_slots(ident, cartan_structure(rho), X, Y))


@settings(max_examples=25, deadline=None)
@given(rationals, rationals, rationals)
def test_obstruction_vanishes_without_chi(kappa, alpha, beta):
    rep = metric_obstruction(0, kappa, alpha, beta)
    assert rep.uxy_consistent
    assert all(r.uxy_slots[2] == 0 for r in rep.rows)


@pytest.mark.parametrize("chi", [1, Fraction(-3, 2), 4])
def test_obstruction_is_minus_chi_for_every_metric(chi):
    rep = metric_obstruction(chi, Fraction(2), Fraction(1, 3), Fraction(-1))
    assert len(rep.rows) == 125
    assert rep.uxy_z_residual == -chi
    assert rep.z_residual_is_metric_independent
    assert not rep.uxy_consistent and rep.uxy_solutions == ()


def test_identity_metric_solves_heisenberg_xy():
    ct = connection_table(0, 0, 0, 0)
    assert all(s == 0 for s in u_residual_slots(ct, CandidateMetric(), ("X", "Y")))
    rep = metric_obstruction(0, 0, 0, 0, metrics=[CandidateMetric()])
    assert rep.uxy_solutions == (CandidateMetric(),)


def test_mutated_table_breaks_torsion():
    ct = connection_table(1, 2, 3, 4)
    flipped = ct.with_entry(0, 1, -ct.table[0][1])
    assert not torsion(flipped, X, Y).is_zero()
