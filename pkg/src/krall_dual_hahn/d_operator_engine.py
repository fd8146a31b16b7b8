"""Lowering operators for dual Hahn polynomials and their Hahn companions.

Three first-order difference operators (kinds 1, 2, 3) act as lowering
operators on the dual Hahn family through the alternating expansion
𝒟(R_n) = Σ_{j≥1} (−1)^{j+1} ε_n⋯ε_{n−j+1} R_{n−j}, each kind determined by
its ε-sequence.  The companion Hahn polynomials Z_j (one family per kind)
satisfy a dressed version of the dual Hahn three-term recurrence in the
degree index, which is what makes the Casorati construction downstream
work.  Kind 3 has ε_{N+1} = 0; the recurrence then needs a replacement
value d in place of c_{N+1}/ε_{N+1}, shared across all j.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Union

from .classical_families import DualHahnParams, dual_hahn, hahn, ttrr_coeffs
from .exact_algebra import Poly, RatFun, pochhammer, rat, rat_str
from .lattice_ops import DiffOp, LambdaPoly, Lattice, apply_op, lambda_eval

KINDS = (1, 2, 3)


def _check_kind(kind: int) -> None:
    if kind not in KINDS:
        raise ValueError(f"kind must be 1, 2 or 3, got {kind}")


def epsilon(kind: int, n, alpha, beta, N) -> Fraction:
    """ε_n for the given kind; kinds 2 and 3 have a pole at n = −α."""
    _check_kind(kind)
    n, alpha, beta, N = rat(n), rat(alpha), rat(beta), rat(N)
    if kind == 1:
        return Fraction(-1)
    if kind == 2:
        return (beta + N - n + 1) / (alpha + n)
    return (N - n + 1) / (alpha + n)


class XiValue:
    """A ξ value: an exact rational or the infinity marker."""

    __slots__ = ("_value",)

    def __init__(self, value: Optional[Union[int, Fraction]]):
        object.__setattr__(self, "_value", None if value is None else rat(value))

    def __setattr__(self, name, value):
        raise AttributeError("XiValue is immutable")

    @property
    def is_infinite(self) -> bool:
        return self._value is None

    @property
    def value(self) -> Fraction:
        if self._value is None:
            raise ArithmeticError("xi is infinite here")
        return self._value

    def __eq__(self, other):
        if isinstance(other, XiValue):
            return self._value == other._value
        if isinstance(other, (int, Fraction)):
            return self._value is not None and self._value == other
        return NotImplemented

    def __hash__(self):
        return hash(self._value)

    def __repr__(self):
        return "XiValue(inf)" if self._value is None else f"XiValue({rat_str(self._value)})"


XI_INFINITY = XiValue(None)


def xi(kind: int, x, i: int, alpha, beta, N) -> XiValue:
    """ξ_{x,i} = ε_x ε_{x−1} ⋯ ε_{x−i+1} for i ≥ 0, reciprocal rule for i < 0.

    Closed forms: (−1)^i; (β+N−x+1)_i/(α+x−i+1)_i; (N−x+1)_i/(α+x−i+1)_i.
    Negative i inverts ξ_{x−i,−i}, giving infinity when that value is zero.
    """
    _check_kind(kind)
    x, alpha, beta, N = rat(x), rat(alpha), rat(beta), rat(N)
    if i < 0:
        base = xi(kind, x - i, -i, alpha, beta, N).value
        if base == 0:
            return XI_INFINITY
        return XiValue(1 / base)
    if kind == 1:
        return XiValue((-1) ** i)
    if kind == 2:
        num = pochhammer(beta + N - x + 1, i)
    else:
        num = pochhammer(N - x + 1, i)
    return XiValue(num / pochhammer(alpha + x - i + 1, i))


def xi_ratfun(kind: int, i: int, alpha, beta, N) -> RatFun:
    """ξ_{x,i} as a rational function of x, for i ≥ 0."""
    _check_kind(kind)
    if i < 0:
        raise ValueError("symbolic xi only supports i >= 0")
    alpha, beta, N = rat(alpha), rat(beta), rat(N)
    if kind == 1:
        return RatFun(Poly([(-1) ** i]))
    if kind == 2:
        num = pochhammer(Poly([beta + N + 1, -1]), i)
    else:
        num = pochhammer(Poly([N + 1, -1]), i)
    return RatFun(num, pochhammer(Poly([alpha - i + 1, 1]), i))


def d_operator(kind: int, alpha, beta, N) -> DiffOp:
    """The explicit first-order operator A(x)Δ_x + B(x)∇_x of the given kind."""
    _check_kind(kind)
    alpha, beta, N = rat(alpha), rat(beta), rat(N)
    s = alpha + beta
    x = Poly.x()
    den_fwd = Poly([s + 1, 2]) * Poly([s + 2, 2])
    den_bwd = Poly([s, 2]) * Poly([s + 1, 2])
    if kind == 1:
        A = RatFun(-(x + alpha + 1) * (x + s + 1), den_fwd)
        B = RatFun(x * (x + beta), den_bwd)
    elif kind == 2:
        A = RatFun((x + alpha + 1) * (N - x), den_fwd)
        B = RatFun((x + beta) * (x + s + N + 1), den_bwd)
    else:
        A = RatFun((x + s + 1) * (N - x), den_fwd)
        B = RatFun(x * (x + s + N + 1), den_bwd)
    # A·Δ + B·∇ with Δ = s_1 − s_0 and ∇ = s_0 − s_{−1}
    return DiffOp(Lattice(alpha, beta), {1: A, 0: B - A, -1: -B})


def lowering_expansion(kind: int, n: int, alpha, beta, N) -> LambdaPoly:
    """Σ_{j=1}^n (−1)^{j+1} ε_n⋯ε_{n−j+1} R_{n−j}, the image of R_n."""
    _check_kind(kind)
    params = DualHahnParams(alpha, beta, N)
    lat = params.lattice()
    total = Poly()
    eps_prod = Fraction(1)
    for j in range(1, n + 1):
        eps_prod *= epsilon(kind, n - j + 1, alpha, beta, N)
        term = dual_hahn(n - j, params).coeffs_lambda * eps_prod
        total = total + (term if j % 2 == 1 else -term)
    return LambdaPoly(lat, total)


def verify_d_operator(kind: int, n_max: int, alpha, beta, N) -> bool:
    """Whether 𝒟(R_n) matches the lowering expansion for every n ≤ n_max."""
    _check_kind(kind)
    params = DualHahnParams(alpha, beta, N)
    op = d_operator(kind, alpha, beta, N)
    for n in range(n_max + 1):
        image = apply_op(op, dual_hahn(n, params))
        expected = lowering_expansion(kind, n, alpha, beta, N).x_view()
        if image != RatFun(expected):
            return False
    return True


def z_poly(kind: int, j: int, alpha, beta, N) -> Poly:
    """The kind's companion Hahn polynomial of degree j, evaluated at −x−1."""
    _check_kind(kind)
    alpha, beta, N = rat(alpha), rat(beta), rat(N)
    if kind == 1:
        base = hahn(j, beta + N + 1, alpha + N + 1, -2 - N)
    elif kind == 2:
        base = hahn(j, -alpha, -beta, -2 - N)
    else:
        base = hahn(j, -alpha, beta, -beta - 2 - N)
    return base(Poly([-1, -1]))


def z_eigenvalue(kind: int, j: int, alpha, beta, N) -> Fraction:
    """λ_h(j): −λ(j+N+1), −λ(−j−1), −λ(j−α) for kinds 1, 2, 3."""
    _check_kind(kind)
    alpha, beta, N = rat(alpha), rat(beta), rat(N)
    lat = Lattice(alpha, beta)
    if kind == 1:
        return -lambda_eval(lat, j + N + 1)
    if kind == 2:
        return -lambda_eval(lat, -j - 1)
    return -lambda_eval(lat, j - alpha)


def z_exception_d(kind: int, n0: int, alpha, beta, N) -> Fraction:
    """The replacement for c_{n0}/ε_{n0} when ε_{n0} = 0, solved at j = 0.

    Z_0 ≡ 1 turns the recurrence at n0 into a linear equation for d.
    """
    params = DualHahnParams(alpha, beta, N)
    a_next, _, _ = ttrr_coeffs(n0 + 1, params)
    _, b, c = ttrr_coeffs(n0, params)
    if epsilon(kind, n0, alpha, beta, N) != 0:
        raise ValueError(f"epsilon_{n0} is nonzero for kind {kind}")
    if c != 0:
        raise ArithmeticError(f"c_{n0} = {rat_str(c)} nonzero alongside epsilon = 0")
    eps_next = epsilon(kind, n0 + 1, alpha, beta, N)
    return z_eigenvalue(kind, 0, alpha, beta, N) - eps_next * a_next + b


def verify_z_recurrence(kind: int, j: int, n_range, alpha, beta, N) -> bool:
    """ε_{n+1}a_{n+1}Z_j(n+1) − b_nZ_j(n) + (c_n/ε_n)Z_j(n−1) = λ(j)Z_j(n).

    Where ε_n = 0 the quotient c_n/ε_n is replaced by the shared value
    from z_exception_d (checking c_n = 0 on the way).
    """
    _check_kind(kind)
    params = DualHahnParams(alpha, beta, N)
    Z = z_poly(kind, j, alpha, beta, N)
    lam_j = z_eigenvalue(kind, j, alpha, beta, N)
    for n in n_range:
        a_next, _, _ = ttrr_coeffs(n + 1, params)
        _, b, c = ttrr_coeffs(n, params)
        eps_next = epsilon(kind, n + 1, alpha, beta, N)
        eps_n = epsilon(kind, n, alpha, beta, N)
        if eps_n == 0:
            if c != 0:
                return False
            tail = z_exception_d(kind, n, alpha, beta, N)
        else:
            tail = c / eps_n
        lhs = (
            eps_next * a_next * Z(Fraction(n + 1))
            - b * Z(Fraction(n))
            + tail * Z(Fraction(n - 1))
        )
        if lhs != lam_j * Z(Fraction(n)):
            return False
    return True
