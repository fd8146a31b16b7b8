"""Set transforms, Casorati families, measures, and the higher-order operator."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from krall_dual_hahn.classical_families import DualHahnParams, dual_hahn, dual_hahn_measure
from krall_dual_hahn.exact_algebra import Poly, RatFun, det_ratfun_laplace, rat
from krall_dual_hahn.exceptions import DegenerateCasorati, ParameterViolation
from krall_dual_hahn.krall_builder import (
    FiniteSet,
    KrallInstance,
    MomentCheckResult,
    admissibility,
    build_M_h,
    build_S,
    build_higher_op,
    casorati_omega,
    casorati_omega_ratfun,
    christoffel_measure,
    find_equivalent_representations,
    involution_I,
    jodme_instance,
    krall_q,
    lemma_P_ratio,
    lemma_p_poly,
    lgp1_degree,
    lgp1_leading,
    moment_constant,
    omega_nonzero_sweep,
    predicted_order,
    predicted_order_plain,
    target_measure,
    transform_J,
    verify_jodme_correspondence,
    verify_moment_identities,
    verify_orthogonality,
)
from krall_dual_hahn.lattice_ops import apply_op, lambda_eval, op_order_window


A, B = Fraction(1, 2), Fraction(1, 3)

finite_sets = st.builds(
    lambda xs: FiniteSet(sorted(xs)),
    st.lists(st.integers(1, 40), unique=True, min_size=1, max_size=6),
)


def test_finite_set_validation():
    assert FiniteSet([1, 3, 9]).max_element == 9
    assert FiniteSet().max_element == -1
    assert FiniteSet([2]).total() == 2
    with pytest.raises(ValueError):
        FiniteSet([3, 1])
    with pytest.raises(ValueError):
        FiniteSet([-1, 2])


@given(finite_sets)
@settings(max_examples=50, deadline=None)
def test_involution_is_involutive(F):
    assert involution_I(involution_I(F)) == F


@given(finite_sets)
@settings(max_examples=50, deadline=None)
def test_involution_cardinality(F):
    assert len(involution_I(F)) == F.max_element - len(F) + 1
    assert involution_I(F).max_element == F.max_element


@given(finite_sets, st.integers(1, 3))
@settings(max_examples=50, deadline=None)
def test_transform_cardinality(F, h):
    J = transform_J(h, F)
    assert len(J) == F.max_element + h - len(F)
    assert J.max_element == h - 1 + F.max_element


def test_involution_printed_examples():
    for k in range(2, 8):
        assert involution_I(FiniteSet(range(1, k + 1))) == FiniteSet([k])
        expected = FiniteSet(list(range(1, k - 1)) + [k])
        assert involution_I(FiniteSet([1, k])) == expected
    assert len(involution_I(FiniteSet([1, 5, 68]))) == 66


def test_transform_examples():
    assert transform_J(1, FiniteSet([1])) == FiniteSet([1])
    assert transform_J(2, FiniteSet([1, 3])) == FiniteSet([1, 3, 4])
    assert transform_J(1, FiniteSet()) == FiniteSet()
    assert involution_I(FiniteSet()) == FiniteSet()


def test_instance_derived_data():
    inst = KrallInstance(A, B, 7, (1,), (2,), (1,), h1=2, h3=1)
    assert inst.U1 == FiniteSet([1, 2])
    assert inst.U2 == FiniteSet([1, 2])
    assert inst.U3 == FiniteSet([1])
    assert (inst.m1, inst.m2, inst.m3, inst.m) == (2, 2, 1, 5)
    assert inst.kinds == (1, 1, 2, 2, 3)
    assert inst.G == (1, 2, 1, 2, 1)
    back = KrallInstance.from_json(inst.to_json())
    assert back.to_json() == inst.to_json()


def test_instance_rejects_bad_inputs():
    with pytest.raises(ParameterViolation):
        KrallInstance(A, B, Fraction(7, 2), (), (), ())
    with pytest.raises(ValueError):
        KrallInstance(A, B, 5, (0,), (), ())
    with pytest.raises(ValueError):
        KrallInstance(A, B, 5, (), (), (), h1=0)


def test_admissibility_violations():
    bad = KrallInstance(Fraction(-2), B, 6, (), (), (1,))
    conditions = [v["condition"] for v in admissibility(bad)]
    assert any("alpha is an integer" in c for c in conditions)
    # difference of parameters hitting a nonnegative integer
    bad2 = KrallInstance(Fraction(10, 3), Fraction(1, 3), 6, (), (), (1,))
    conditions = [v["condition"] for v in admissibility(bad2)]
    assert any("alpha-beta-1" in c for c in conditions)
    good = KrallInstance(A, B, 6, (1,), (1,), (1,))
    assert admissibility(good) == []


def _shape_instance(alpha, beta, N, m1, m2, m3):
    F1 = (1,) if m1 else ()
    F2 = (m2,) if m2 else ()
    F3 = (1,) if m3 else ()
    return KrallInstance(alpha, beta, N, F1, F2, F3, h1=max(m1, 1), h3=max(m3, 1))


SHAPES = [
    (1, 0, 0),
    (0, 1, 0),
    (0, 0, 1),
    (2, 0, 0),
    (0, 2, 0),
    (0, 0, 2),
    (1, 1, 1),
    (2, 1, 0),
    (0, 1, 2),
]


@pytest.mark.parametrize("shape", SHAPES)
def test_factor_identity_against_cofactor_oracle(shape):
    inst = _shape_instance(A, B, 6, *shape)
    assert admissibility(inst) == []
    S = build_S(inst)
    omega = casorati_omega_ratfun(inst)
    P = (S * omega).as_poly()
    ys = inst.y_polys()
    assert P == lemma_P_ratio(inst, ys)
    assert P.degree == lgp1_degree(inst)
    assert P.leading() == lgp1_leading(inst, [y.leading() for y in ys])


def test_factor_identity_with_degree_zero_row():
    # a transformed first set containing 0 contributes a constant row
    inst = KrallInstance(A, B, 6, (2,), (), (), h1=1)
    assert 0 in inst.U1
    S = build_S(inst)
    P = (S * casorati_omega_ratfun(inst)).as_poly()
    assert P.degree == lgp1_degree(inst)
    ys = inst.y_polys()
    assert P.leading() == lgp1_leading(inst, [y.leading() for y in ys])


def test_omega_ratfun_matches_pointwise_values():
    inst = KrallInstance(A, B, 6, (1,), (1,), (), h1=1)
    omega = casorati_omega_ratfun(inst)
    for x in range(-1, 9):
        assert omega(Fraction(x)) == casorati_omega(inst, x)


def test_omega_empty_trio_is_one():
    inst = KrallInstance(A, B, 5, (), (), ())
    assert casorati_omega(inst, 3) == 1
    assert casorati_omega_ratfun(inst) == RatFun.one()


def test_compensation_polynomials_and_bounds():
    for trio in [((1,), (), ()), ((1,), (1,), (1,))]:
        N = 6 if trio[1] == () else 7
        inst = KrallInstance(A, B, N, *trio)
        sign = Fraction((-1) ** (inst.m * inst.m1))
        S_eff = build_S(inst) * sign
        r = predicted_order(inst)
        for h in range(1, inst.m + 1):
            M_h = build_M_h(inst, S_eff, h)
            assert M_h.degree <= r - inst.G[h - 1]


def test_single_block_compensation_is_shifted_S():
    inst = KrallInstance(A, B, 6, (1,), (), ())
    S = build_S(inst)
    M_1 = build_M_h(inst, S, 1)
    assert RatFun(M_1) == S.shift_arg(1)


def test_krall_q_reduces_to_base_family():
    inst = KrallInstance(A, B, 5, (), (), ())
    params = DualHahnParams(A, B, 5)
    for n in range(6):
        assert krall_q(inst, n) == dual_hahn(n, params)


def test_krall_q_mixes_consecutive_members():
    inst = KrallInstance(A, B, 6, (1,), (), ())
    params = DualHahnParams(A, B, 6)
    n = 3
    q = krall_q(inst, n)
    # leading block is Ω(n)·R_n, remainder a multiple of R_{n-1} whose
    # magnitude is the evaluated row polynomial
    diff = q.coeffs_lambda - dual_hahn(n, params).coeffs_lambda * casorati_omega(inst, n)
    base = dual_hahn(n - 1, params).coeffs_lambda
    kappa = diff.leading() / base.leading()
    assert diff == base * kappa
    z = inst.y_polys()[0]
    assert abs(kappa) == abs(z(Fraction(n)))


def test_target_measure_support_and_shift_relation():
    inst = KrallInstance(A, B, 6, (1,), (1,), (), h1=1)
    mu = target_measure(inst)
    assert len(mu) == 6 + inst.m1 + inst.m2 + 1
    tp = inst.tilde_params()
    f2M = inst.F2.max_element
    assert tp.alpha + tp.beta == A + B - 2 * f2M - 2


def test_target_measure_rejects_inadmissible():
    inst = KrallInstance(Fraction(-2), B, 6, (), (), (1,))
    with pytest.raises(ParameterViolation):
        target_measure(inst)


def test_orthogonality_of_constructed_family():
    inst = KrallInstance(A, B, 6, (), (), (1,))
    mu = target_measure(inst)
    qs = [krall_q(inst, n) for n in range(6 + inst.m1 + inst.m2 + 1)]
    assert verify_orthogonality(qs, mu)
    # perturbing one mass must break it
    atoms = list(mu.atoms)
    atoms[2] = (atoms[2][0], atoms[2][1] + 1)
    from krall_dual_hahn.classical_families import DiscreteMeasure

    assert not verify_orthogonality(qs, DiscreteMeasure(atoms))


def test_higher_operator_eigen_identity():
    inst = KrallInstance(A, B, 6, (), (1,), ())
    assert omega_nonzero_sweep(inst)
    op, P_S = build_higher_op(inst)
    r = predicted_order(inst)
    assert op_order_window(op) == (-r, r)
    for n in range(8):
        q = krall_q(inst, n)
        assert apply_op(op, q) == RatFun(q.x_view() * P_S(Fraction(n)))


def test_degenerate_band_when_third_set_present():
    # two rows from the third kind force a zero just past the family range
    inst = KrallInstance(A, B, 6, (), (), (1,), h3=2)
    N, m1, m2, m = 6, inst.m1, inst.m2, inst.m
    assert omega_nonzero_sweep(inst)
    for n in range(N + m1 + m2 + 2, N + m + 1):
        assert casorati_omega(inst, n) == 0
        with pytest.raises(DegenerateCasorati):
            krall_q(inst, n)


def test_sweep_detects_zero():
    inst = KrallInstance(A, B, 5, (), (1,), ())
    assert not omega_nonzero_sweep(inst)
    assert casorati_omega(inst, 3) == 0


def test_predicted_order_formulas():
    assert predicted_order(KrallInstance(A, B, 5, (), (), ())) == 1
    assert predicted_order_plain((1, 5), (31,), ()) == 37
    assert predicted_order_plain((), (), ()) == 1
    # the two forms agree through the shifted-parameter mapping
    for trio in [((1,), (), ()), ((), (2,), ()), ((2,), (1,), (1,))]:
        inst = jodme_instance(A, B, 9, *trio)
        assert predicted_order(inst) == predicted_order_plain(*trio)


def test_christoffel_measure_masses():
    params = DualHahnParams(A, B, 6)
    mu = christoffel_measure(A, B, 6, (1,), (), ())
    base = dual_hahn_measure(params)
    lat = params.lattice()
    root = lambda_eval(lat, 5)
    for x in base.support():
        expected = base.mass_at(x) * (lambda_eval(lat, x) - root)
        assert mu.mass_at(x) == expected


def test_christoffel_measure_guards():
    with pytest.raises(ParameterViolation):
        christoffel_measure(Fraction(-1), B, 6, (), (), ())
    with pytest.raises(ParameterViolation):
        christoffel_measure(A, Fraction(2), 6, (), (), (2,))


def test_measure_correspondence():
    for trio in [((1,), (), ()), ((1,), (1,), (1,)), ((), (2,), (1,))]:
        assert verify_jodme_correspondence(A, B, 9, *trio)


def test_moment_identities_pass_and_classify():
    inst = KrallInstance(A, B, 5, (1,), (), ())
    assert verify_moment_identities(inst)
    c = moment_constant(inst)
    flipped = verify_moment_identities(inst, constant=-c)
    assert flipped.status == "sign_discrepancy"
    assert not flipped
    wrong = verify_moment_identities(inst, constant=2 * c)
    assert wrong.status == "fail"
    assert wrong.witness["identity"] == "moment-sum"


def test_moment_identities_mixed_instance():
    inst = KrallInstance(A, B, 7, (1,), (1,), (1,))
    result = verify_moment_identities(inst)
    assert result.status == "pass"


def test_moment_result_is_immutable():
    r = MomentCheckResult("pass")
    with pytest.raises(AttributeError):
        r.status = "fail"


def test_search_finds_base_measure():
    mu = dual_hahn_measure(DualHahnParams(A, B, 6))
    reps = find_equivalent_representations(A, B, 6, mu)
    assert len(reps) == 1
    only = reps[0]
    assert not only["F1"] and not only["F2"] and not only["F3"]
    assert only["scale"] == 1


def test_search_recovers_third_set_and_scale():
    target = christoffel_measure(A, B, 9, (2,), (), (1,)).scaled(Fraction(7, 3))
    reps = find_equivalent_representations(A, B, 9, target)
    match = [r for r in reps if tuple(r["F1"]) == (2,) and tuple(r["F3"]) == (1,)]
    assert match and match[0]["scale"] == Fraction(7, 3)
    # minimizer comes first
    assert reps[0]["r"] == min(r["r"] for r in reps)


def test_search_rejects_foreign_support():
    mu = dual_hahn_measure(DualHahnParams(A, B, 6)).shifted_support(-2)
    assert find_equivalent_representations(A, B, 6, mu) == []


def test_lemma_p_poly_shape():
    inst = KrallInstance(A, B, 6, (), (2,), (1,), h3=1)
    p = lemma_p_poly(inst)
    # only blocks of the second and third kind contribute factors
    m2, m3 = inst.m2, inst.m3
    expected = (m2 * (m2 - 1) + m3 * (m3 - 1) + (m2 + m3) * (m2 + m3 - 1)) // 2
    assert p.degree == expected
    inst_first_only = KrallInstance(A, B, 6, (1,), (), (), h1=3)
    assert lemma_p_poly(inst_first_only) == Poly([1])
