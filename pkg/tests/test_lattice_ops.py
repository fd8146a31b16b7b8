"""Quadratic lattice, the even-polynomial subring, and shift operators."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from krall_dual_hahn.exact_algebra import Poly, RatFun
from krall_dual_hahn.exceptions import EmptyOperator, NotInLambdaRing
from krall_dual_hahn.lattice_ops import (
    DiffOp,
    LambdaPoly,
    Lattice,
    apply_op,
    compose_ops,
    involution,
    is_in_lambda_algebra,
    lambda_eval,
    mu_basis_lambda,
    mu_basis_x,
    op_order_window,
    poly_of_op,
    to_lambda_poly,
)


small_rational = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 9))
lattices = st.builds(
    Lattice,
    st.builds(Fraction, st.integers(-8, 8), st.integers(2, 7)),
    st.builds(Fraction, st.integers(-8, 8), st.integers(2, 7)),
)


@pytest.fixture
def lat():
    return Lattice(Fraction(1, 2), Fraction(1, 3))


def test_lambda_eval(lat):
    # lambda(x) = x(x + alpha + beta + 1)
    assert lambda_eval(lat, 2) == 2 * (2 + Fraction(11, 6))
    assert lambda_eval(lat, 0) == 0
    assert lambda_eval(lat, Fraction(-11, 6)) == 0


@given(lattices, st.lists(small_rational, min_size=0, max_size=6))
@settings(max_examples=50, deadline=None)
def test_involution_is_an_involution(lattice, coeffs):
    f = Poly(coeffs)
    assert involution(lattice, involution(lattice, f)) == f


def test_involution_fixes_lambda(lat):
    assert involution(lat, lat.lambda_x()) == lat.lambda_x()
    # x itself is moved
    assert involution(lat, Poly.x()) != Poly.x()


@given(lattices, st.lists(small_rational, min_size=1, max_size=6))
@settings(max_examples=50, deadline=None)
def test_lambda_poly_roundtrip(lattice, coeffs):
    lp = LambdaPoly(lattice, Poly(coeffs))
    back = to_lambda_poly(lattice, lp.x_view())
    assert back.coeffs_lambda == lp.coeffs_lambda


def test_to_lambda_poly_rejects_odd_functions(lat):
    with pytest.raises(NotInLambdaRing):
        to_lambda_poly(lat, Poly.x())


def test_mu_basis(lat):
    for j in range(5):
        mx = mu_basis_x(lat, j)
        ml = mu_basis_lambda(lat, j)
        assert mx.degree == 2 * j
        assert mx.leading() == 1
        assert ml.degree == j
        for i in range(j):
            assert ml(lambda_eval(lat, i)) == 0
        # the two views agree pointwise on the lattice
        for x in range(j + 3):
            assert mx(Fraction(x)) == ml(lambda_eval(lat, x))


def test_diffop_drops_zero_terms(lat):
    T = DiffOp(lat, {1: RatFun(Poly([0])), 0: RatFun(Poly([2]))})
    assert set(T.terms) == {0}
    assert DiffOp.identity(lat).terms[0] == RatFun.one()


def test_apply_op_shifts_argument(lat):
    T = DiffOp(lat, {1: RatFun.one()})
    p = LambdaPoly(lat, Poly([0, 1]))
    got = apply_op(T, p)
    want = RatFun(lat.lambda_x().shift_arg(1))
    assert got == want


def test_compose_matches_sequential_application(lat):
    A = DiffOp(lat, {1: RatFun(Poly([0, 1])), 0: RatFun(Poly([3]))})
    B = DiffOp(lat, {-1: RatFun(Poly([1, 1])), 1: RatFun(Poly([2]))})
    C = compose_ops(A, B)
    p = LambdaPoly(lat, Poly([1, 2, 1]))
    # apply B then A, pointwise over sample x values
    for xi in range(-3, 4):
        x = Fraction(xi)
        inner = {}
        total = Fraction(0)
        for j, h in A.terms.items():
            shifted = Fraction(0)
            for k, g in B.terms.items():
                shifted += g(x + j) * p(lambda_eval(lat, x + j + k))
            total += h(x) * shifted
        assert apply_op(C, p)(x) == total


def test_compose_associative(lat):
    A = DiffOp(lat, {1: RatFun(Poly([0, 1]))})
    B = DiffOp(lat, {-1: RatFun(Poly([1, 1]))})
    C = DiffOp(lat, {0: RatFun(Poly([2])), 2: RatFun.one()})
    assert compose_ops(compose_ops(A, B), C) == compose_ops(A, compose_ops(B, C))


def test_poly_of_op_is_horner_composition(lat):
    D = DiffOp(lat, {1: RatFun.one(), 0: RatFun(Poly([-1]))})
    P = Poly([1, 0, 1])
    expanded = compose_ops(D, D) + DiffOp.identity(lat)
    assert poly_of_op(P, D) == expanded


def test_order_window_and_empty(lat):
    T = DiffOp(lat, {-2: RatFun.one(), 3: RatFun(Poly([1, 1]))})
    assert op_order_window(T) == (-2, 3)
    with pytest.raises(EmptyOperator):
        op_order_window(DiffOp.zero(lat))


def test_lambda_algebra_rejects_bare_shift(lat):
    # a lone forward shift maps lambda-polynomials outside the subring
    assert not is_in_lambda_algebra(DiffOp(lat, {1: RatFun.one()}), 4)
    assert is_in_lambda_algebra(DiffOp.identity(lat), 4)


def test_diffop_json_roundtrip(lat):
    T = DiffOp(lat, {-1: RatFun(Poly([1]), Poly([1, 1])), 2: RatFun(Poly([0, 3]))})
    data = T.to_json()
    assert [entry["shift"] for entry in data] == [-1, 2]
    assert DiffOp.from_json(lat, data) == T


def test_diffop_scalar_and_poly_multiplication(lat):
    T = DiffOp(lat, {0: RatFun.one(), 1: RatFun.one()})
    twice = T * 2
    assert twice.terms[0] == RatFun(Poly([2]))
    scaled = T * Poly([0, 1])
    assert scaled.terms[1] == RatFun(Poly([0, 1]))
