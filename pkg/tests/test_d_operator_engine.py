"""Lowering operators, their coefficient sequences, and the row polynomials."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from krall_dual_hahn.classical_families import DualHahnParams, dual_hahn, ttrr_coeffs
from krall_dual_hahn.d_operator_engine import (
    KINDS,
    XI_INFINITY,
    XiValue,
    d_operator,
    epsilon,
    lowering_expansion,
    verify_d_operator,
    verify_z_recurrence,
    xi,
    xi_ratfun,
    z_eigenvalue,
    z_exception_d,
    z_poly,
)
from krall_dual_hahn.exact_algebra import RatFun
from krall_dual_hahn.lattice_ops import apply_op, is_in_lambda_algebra


A, B, N = Fraction(1, 2), Fraction(1, 3), 5


def eps_product(kind, x, i):
    """Reference product of consecutive epsilon values, i >= 0."""
    out = Fraction(1)
    for j in range(i):
        out *= epsilon(kind, x - j, A, B, N)
    return out


def test_epsilon_values():
    assert epsilon(1, 3, A, B, N) == -1
    assert epsilon(2, 0, A, B, N) == (B + N + 1) / A
    assert epsilon(3, N + 1, A, B, N) == 0


@pytest.mark.parametrize("kind", KINDS)
def test_xi_closed_form_matches_product(kind):
    for x in (Fraction(7, 3), Fraction(4), Fraction(-1)):
        for i in range(5):
            assert xi(kind, x, i, A, B, N).value == eps_product(kind, x, i)


@pytest.mark.parametrize("kind", KINDS)
@given(st.integers(-4, 8), st.integers(0, 4), st.integers(0, 4))
@settings(max_examples=40, deadline=None)
def test_xi_multiplicative(kind, x, i, k):
    left = xi(kind, x, i + k, A, B, N)
    a = xi(kind, x, i, A, B, N)
    b = xi(kind, x - i, k, A, B, N)
    assert left.value == a.value * b.value


def test_xi_negative_index_reciprocal():
    for kind in KINDS:
        for x in (Fraction(2), Fraction(9, 4)):
            for i in (1, 2, 3):
                forward = xi(kind, x + i, i, A, B, N)
                backward = xi(kind, x, -i, A, B, N)
                if forward.value != 0:
                    assert backward.value == 1 / forward.value
                else:
                    assert backward.is_infinite


def test_xi_infinity_is_sticky():
    v = xi(3, N, -1, A, B, N)
    assert v.is_infinite
    assert v == XI_INFINITY
    with pytest.raises(ArithmeticError):
        _ = v.value


@pytest.mark.parametrize("kind", KINDS)
def test_xi_ratfun_matches_pointwise(kind):
    for i in range(4):
        f = xi_ratfun(kind, i, A, B, N)
        for x in range(-2, 6):
            assert f(Fraction(x)) == xi(kind, x, i, A, B, N).value


@pytest.mark.parametrize("kind", KINDS)
def test_lowering_operator_expansion(kind):
    params = DualHahnParams(A, B, N)
    op = d_operator(kind, A, B, N)
    for n in range(7):
        got = apply_op(op, dual_hahn(n, params))
        want = RatFun(lowering_expansion(kind, n, A, B, N).x_view())
        assert got == want
    assert verify_d_operator(kind, 6, A, B, N)


@pytest.mark.parametrize("kind", KINDS)
def test_lowering_operator_in_lambda_algebra(kind):
    assert is_in_lambda_algebra(d_operator(kind, A, B, N), 8)


@pytest.mark.parametrize("kind", KINDS)
def test_row_polynomial_degrees(kind):
    for j in range(5):
        assert z_poly(kind, j, A, B, N).degree == j


@pytest.mark.parametrize("kind", KINDS)
def test_row_recurrence_all_kinds(kind):
    for j in range(5):
        assert verify_z_recurrence(kind, j, range(-5, N + 4), A, B, N)


def test_row_recurrence_exception_value():
    # the vanishing-coefficient row: replacement entry solved at degree zero
    d = z_exception_d(3, N + 1, A, B, N)
    assert d == B * (A + N + 1)
    # requesting the replacement where nothing vanishes is an error
    with pytest.raises(ValueError):
        z_exception_d(3, 2, A, B, N)


def test_exception_row_consistent_across_degrees():
    n0 = N + 1
    d = z_exception_d(3, n0, A, B, N)
    a_next = ttrr_coeffs(n0 + 1, DualHahnParams(A, B, N))[0]
    b_n = ttrr_coeffs(n0, DualHahnParams(A, B, N))[1]
    eps_next = epsilon(3, n0 + 1, A, B, N)
    for j in range(5):
        Z = z_poly(3, j, A, B, N)
        lhs = eps_next * a_next * Z(Fraction(n0 + 1)) - b_n * Z(Fraction(n0)) + d * Z(
            Fraction(n0 - 1)
        )
        assert lhs == z_eigenvalue(3, j, A, B, N) * Z(Fraction(n0))


def test_xi_value_equality_with_scalars():
    assert xi(1, 3, 2, A, B, N) == Fraction(1)
    assert xi(1, 3, 1, A, B, N) == -1
    assert XiValue(Fraction(5)) == XiValue(Fraction(5))
    assert XI_INFINITY != XiValue(Fraction(0))
