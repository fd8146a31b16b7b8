"""Dual Hahn and Hahn families: orthogonality, recurrences, identities."""

from fractions import Fraction

import pytest

from krall_dual_hahn.classical_families import (
    DiscreteMeasure,
    DualHahnParams,
    dual_hahn,
    dual_hahn_measure,
    dual_hahn_norm,
    dual_hahn_roots_property,
    dual_hahn_weight,
    gamma_op,
    hahn,
    hahn_eigenvalue,
    ttrr_coeffs,
    verify_hahn_2nd_order,
    verify_identity_fwd_shift,
    verify_identity_genfun,
    verify_identity_sum,
)
from krall_dual_hahn.exact_algebra import Poly, RatFun, pochhammer, rat
from krall_dual_hahn.exceptions import ParameterViolation
from krall_dual_hahn.lattice_ops import apply_op, is_in_lambda_algebra, lambda_eval, op_order_window


PARAMS = DualHahnParams(Fraction(1, 2), Fraction(1, 3), 5)


def test_measure_mode_guards():
    DualHahnParams(Fraction(1, 2), Fraction(1, 3), 5).validate_measure_mode()
    with pytest.raises(ParameterViolation):
        DualHahnParams(Fraction(-3), Fraction(1, 3), 5).validate_measure_mode()
    with pytest.raises(ParameterViolation):
        DualHahnParams(Fraction(1, 2), Fraction(1, 3), Fraction(7, 2)).validate_measure_mode()
    # alpha+beta in the forbidden strip
    with pytest.raises(ParameterViolation):
        DualHahnParams(Fraction(-7, 2), Fraction(1, 2), 5).validate_measure_mode()


def test_first_members():
    lat = PARAMS.lattice()
    r0 = dual_hahn(0, PARAMS)
    assert r0.coeffs_lambda == Poly([1])
    r1 = dual_hahn(1, PARAMS)
    # R_1 = lambda/(alpha+1) - N
    assert r1.coeffs_lambda == Poly([-5, Fraction(2, 3)])
    assert dual_hahn(-1, PARAMS).coeffs_lambda == Poly()


def test_degree_and_leading():
    for n in range(7):
        p = dual_hahn(n, PARAMS)
        assert p.degree == n
        lead = Fraction(1)
        for f in range(1, n + 1):
            lead /= (PARAMS.alpha + f) * f
        if n:
            assert p.coeffs_lambda.leading() == lead


def test_weight_against_measure_total():
    params = DualHahnParams(Fraction(1), Fraction(1), 2)
    mu = dual_hahn_measure(params)
    assert mu.total_mass() == sum(
        dual_hahn_weight(params, x) for x in range(3)
    )


def test_orthogonality_and_norms():
    lat = PARAMS.lattice()
    mu = dual_hahn_measure(PARAMS)
    polys = [dual_hahn(n, PARAMS) for n in range(6)]
    for n in range(6):
        for m in range(n, 6):
            inner = mu.pair(lat, polys[n], polys[m])
            if n == m:
                assert inner == dual_hahn_norm(n, PARAMS)
            else:
                assert inner == 0


def test_norm_formula_vanishes_past_support():
    assert dual_hahn_norm(6, PARAMS) == 0
    assert dual_hahn_norm(3, PARAMS) > 0


def test_three_term_recurrence():
    lat = PARAMS.lattice()
    lam = lat.lambda_x()
    for n in range(5):
        a1, b, c = ttrr_coeffs(n, PARAMS)
        a_next = ttrr_coeffs(n + 1, PARAMS)[0]
        lhs = dual_hahn(n, PARAMS).coeffs_lambda * Poly([0, 1])
        rhs = (
            dual_hahn(n + 1, PARAMS).coeffs_lambda * a_next
            + dual_hahn(n, PARAMS).coeffs_lambda * b
            + dual_hahn(n - 1, PARAMS).coeffs_lambda * c
        )
        assert lhs == rhs


def test_gamma_eigen_and_algebra():
    gamma = gamma_op(PARAMS)
    assert op_order_window(gamma) == (-1, 1)
    for n in range(7):
        p = dual_hahn(n, PARAMS)
        assert apply_op(gamma, p) == RatFun(p.x_view() * Fraction(n))
    assert is_in_lambda_algebra(gamma, 8)


def test_roots_property_identifies_support_roots():
    params = DualHahnParams(Fraction(1, 2), Fraction(1, 3), 3)
    for n in (4, 5):
        for i in range(4):
            assert dual_hahn_roots_property(params, n, i)


def test_sum_and_forward_shift_identities():
    for n in range(6):
        assert verify_identity_sum(n, PARAMS)
        assert verify_identity_fwd_shift(n, PARAMS)


def test_generating_function_identity():
    params = DualHahnParams(Fraction(1, 2), Fraction(1, 3), Fraction(7, 2))
    for x in range(4):
        assert verify_identity_genfun(x, params, 8)


def test_hahn_polynomials():
    h0 = hahn(0, Fraction(1, 2), Fraction(1, 3), 5)
    assert h0 == Poly([1])
    h1 = hahn(1, Fraction(1, 2), Fraction(1, 3), 5)
    # degree-one member: (alpha+beta+2)x - N(alpha+1)
    assert h1 == Poly([Fraction(-15, 2), Fraction(17, 6)])
    for n in range(5):
        assert hahn(n, Fraction(1, 2), Fraction(1, 3), 5).degree == n


def test_hahn_parameter_guard():
    with pytest.raises(ParameterViolation):
        hahn(2, Fraction(-1), Fraction(-1), 5)
    # boundary of the guard window: alpha+beta = -2n still degenerate
    with pytest.raises(ParameterViolation):
        hahn(2, Fraction(-2), Fraction(-2), 5)


def test_hahn_difference_equation():
    for n in range(6):
        assert verify_hahn_2nd_order(n, Fraction(1, 2), Fraction(1, 3), 5)
        assert verify_hahn_2nd_order(n, Fraction(2, 5), Fraction(3, 7), Fraction(9, 2))
    assert hahn_eigenvalue(2, Fraction(1, 2), Fraction(1, 3)) == 2 * (
        2 + Fraction(1, 2) + Fraction(1, 3) + 1
    )


def test_measure_container():
    mu = DiscreteMeasure([(0, Fraction(1, 2)), (2, Fraction(0)), (1, Fraction(1, 3))])
    assert mu.support() == (0, 1)
    assert mu.mass_at(2) == 0
    assert mu.total_mass() == Fraction(5, 6)
    with pytest.raises(ValueError):
        DiscreteMeasure([(0, 1), (0, 2)])
    assert DiscreteMeasure.from_json(mu.to_json()) == mu


def test_measure_transforms():
    mu = DiscreteMeasure([(0, 1), (1, 2)])
    assert mu.shifted_support(3).support() == (3, 4)
    assert mu.scaled(Fraction(1, 2)).mass_at(1) == 1
    doubled = mu.multiplied_by(lambda x: Fraction(2))
    assert doubled.proportionality(mu) == Fraction(1, 2)
    other = DiscreteMeasure([(0, 1), (1, 3)])
    assert mu.proportionality(other) is None


def test_dual_hahn_rejects_degenerate_alpha():
    with pytest.raises(ParameterViolation):
        dual_hahn(2, DualHahnParams(Fraction(-2), Fraction(1, 3), 5))
