"""Dual Hahn and Hahn polynomials as exact objects.

Dual Hahn polynomials R_n live in the lattice variable λ and are
eigenfunctions of a second-order difference operator Γ with eigenvalue n.
Hahn polynomials h_n live directly in x and satisfy their own second-order
difference equation with eigenvalue n(n+α+β+1).  Both families, their
weights, norms, recurrence coefficients, and the structural identities
connecting parameter shifts are implemented over exact rationals.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Optional, Sequence, Union

from .exact_algebra import (
    Poly,
    RatFun,
    Series,
    binomial_general,
    pochhammer,
    rat,
    rat_str,
    series_pow,
)
from .exceptions import ParameterViolation
from .lattice_ops import DiffOp, Lattice, LambdaPoly, lambda_eval, mu_basis_lambda


class DualHahnParams:
    """Parameter triple (α, β, N) for the dual Hahn family."""

    __slots__ = ("alpha", "beta", "N")

    def __init__(self, alpha, beta, N):
        object.__setattr__(self, "alpha", rat(alpha))
        object.__setattr__(self, "beta", rat(beta))
        object.__setattr__(self, "N", rat(N))

    def __setattr__(self, name, value):
        raise AttributeError("DualHahnParams is immutable")

    def __eq__(self, other):
        if not isinstance(other, DualHahnParams):
            return NotImplemented
        return (self.alpha, self.beta, self.N) == (other.alpha, other.beta, other.N)

    def __hash__(self):
        return hash((self.alpha, self.beta, self.N))

    def __repr__(self):
        return (
            f"DualHahnParams(alpha={rat_str(self.alpha)}, "
            f"beta={rat_str(self.beta)}, N={rat_str(self.N)})"
        )

    def lattice(self) -> Lattice:
        return Lattice(self.alpha, self.beta)

    def validate_measure_mode(self) -> None:
        """N a positive integer and no pochhammer in the weight vanishes."""
        if self.N.denominator != 1 or self.N <= 0:
            raise ParameterViolation(f"N = {rat_str(self.N)} is not a positive integer")
        Nint = int(self.N)
        for name, value in (("alpha", self.alpha), ("beta", self.beta)):
            if value.denominator == 1 and -Nint <= value <= -1:
                raise ParameterViolation(f"{name} = {rat_str(value)} lies in {{-1,...,-N}}")
        s = self.alpha + self.beta
        if s.denominator == 1 and -(2 * Nint + 1) <= s <= -1:
            raise ParameterViolation(
                f"alpha+beta = {rat_str(s)} lies in {{-1,...,-2N-1}}"
            )


class DiscreteMeasure:
    """Finite signed measure: atoms (support point, mass), zero masses dropped."""

    __slots__ = ("atoms",)

    def __init__(self, atoms: Iterable[tuple]):
        clean = []
        seen = set()
        for x, mass in atoms:
            x, mass = rat(x), rat(mass)
            if x in seen:
                raise ValueError(f"duplicate support point {rat_str(x)}")
            seen.add(x)
            if mass != 0:
                clean.append((x, mass))
        clean.sort(key=lambda a: a[0])
        object.__setattr__(self, "atoms", tuple(clean))

    def __setattr__(self, name, value):
        raise AttributeError("DiscreteMeasure is immutable")

    def __eq__(self, other):
        if not isinstance(other, DiscreteMeasure):
            return NotImplemented
        return self.atoms == other.atoms

    def __hash__(self):
        return hash(self.atoms)

    def __len__(self):
        return len(self.atoms)

    def support(self) -> tuple:
        return tuple(x for x, _ in self.atoms)

    def mass_at(self, x) -> Fraction:
        x = rat(x)
        for xi, mi in self.atoms:
            if xi == x:
                return mi
        return Fraction(0)

    def total_mass(self) -> Fraction:
        return sum((m for _, m in self.atoms), Fraction(0))

    def pair(self, lat: Lattice, p: LambdaPoly, q: Optional[LambdaPoly] = None) -> Fraction:
        """⟨μ, p·q⟩ with the λ-polynomials evaluated at λ(x) atom by atom."""
        total = Fraction(0)
        for x, mass in self.atoms:
            lam = lambda_eval(lat, x)
            value = p(lam)
            if q is not None:
                value *= q(lam)
            total += mass * value
        return total

    def multiplied_by(self, factor) -> "DiscreteMeasure":
        """New measure with mass scaled by factor(x) per atom (zeros dropped)."""
        return DiscreteMeasure((x, m * factor(x)) for x, m in self.atoms)

    def shifted_support(self, c) -> "DiscreteMeasure":
        """New measure with every support point translated by c."""
        c = rat(c)
        return DiscreteMeasure((x + c, m) for x, m in self.atoms)

    def scaled(self, c) -> "DiscreteMeasure":
        c = rat(c)
        return DiscreteMeasure((x, m * c) for x, m in self.atoms)

    def proportionality(self, other: "DiscreteMeasure") -> Optional[Fraction]:
        """The nonzero ratio other/self shared by all atoms, or None."""
        if self.support() != other.support():
            return None
        if not self.atoms:
            return Fraction(1)
        ratio = other.atoms[0][1] / self.atoms[0][1]
        for (_, a), (_, b) in zip(self.atoms, other.atoms):
            if b != a * ratio:
                return None
        return ratio

    def to_json(self) -> list[dict]:
        return [{"x": rat_str(x), "mass": rat_str(m)} for x, m in self.atoms]

    @staticmethod
    def from_json(data: Sequence[dict]) -> "DiscreteMeasure":
        return DiscreteMeasure((rat(d["x"]), rat(d["mass"])) for d in data)

    def __repr__(self):
        inner = ", ".join(f"({rat_str(x)}, {rat_str(m)})" for x, m in self.atoms)
        return f"DiscreteMeasure([{inner}])"


def dual_hahn(n: int, params: DualHahnParams) -> LambdaPoly:
    """R_n as a degree-n polynomial in λ, leading coefficient 1/((α+1)_n n!).

    Negative n yields the zero polynomial (the recurrence convention).
    """
    lat = params.lattice()
    if n < 0:
        return LambdaPoly(lat, Poly())
    alpha, N = params.alpha, params.N
    if pochhammer(alpha + 1, n) == 0:
        raise ParameterViolation(
            f"(alpha+1)_{n} = 0 for alpha = {rat_str(alpha)}"
        )
    total = Poly()
    for j in range(n + 1):
        coeff = (
            Fraction((-1) ** j)
            * pochhammer(Fraction(-n), j)
            * pochhammer(-N + j, n - j)
            / (pochhammer(alpha + 1, j) * factorial(j))
        )
        if coeff:
            total = total + mu_basis_lambda(lat, j) * coeff
    return LambdaPoly(lat, total * Fraction(1, factorial(n)))


def dual_hahn_roots_property(params: DualHahnParams, n: int, i: int) -> bool:
    """Whether R_n vanishes at λ(i); holds for all i = 0..N once n ≥ N+1."""
    if params.N.denominator != 1 or params.N < 0:
        raise ParameterViolation("needs N a nonnegative integer")
    if n < int(params.N) + 1:
        raise ParameterViolation("needs n >= N+1")
    lat = params.lattice()
    return dual_hahn(n, params)(lambda_eval(lat, i)) == 0


def gamma_op(params: DualHahnParams) -> DiffOp:
    """The second-order operator with Γ(R_n) = n·R_n."""
    alpha, beta, N = params.alpha, params.beta, params.N
    s = alpha + beta
    x = Poly.x()
    B = RatFun(
        -(x + alpha + 1) * (x + s + 1) * (N - x),
        Poly([s + 1, 2]) * Poly([s + 2, 2]),
    )
    D = RatFun(
        -x * (x + s + N + 1) * (x + beta),
        Poly([s, 2]) * Poly([s + 1, 2]),
    )
    return DiffOp(params.lattice(), {1: B, 0: -(B + D), -1: D})


def ttrr_coeffs(n, params: DualHahnParams) -> tuple:
    """(a_n, b_n, c_n) with λR_n = a_{n+1}R_{n+1} + b_nR_n + c_nR_{n−1}."""
    n = rat(n)
    alpha, beta, N = params.alpha, params.beta, params.N
    a = n * (n + alpha)
    b = -(n + alpha + 1) * (n - N) - n * (n - beta - N - 1)
    c = (n - beta - N - 1) * (n - N - 1)
    return a, b, c


def dual_hahn_weight(params: DualHahnParams, x: int) -> Fraction:
    """Mass of the dual Hahn measure at the integer x, 0 ≤ x ≤ N."""
    alpha, beta, N = params.alpha, params.beta, params.N
    Nint = int(N)
    num = (
        (2 * x + alpha + beta + 1)
        * pochhammer(alpha + 1, x)
        * pochhammer(-N, x)
        * factorial(Nint)
    )
    den = (
        Fraction((-1) ** x)
        * pochhammer(x + alpha + beta + 1, Nint + 1)
        * pochhammer(beta + 1, x)
        * factorial(x)
    )
    return num / den


def dual_hahn_measure(params: DualHahnParams) -> DiscreteMeasure:
    """Atoms at x = 0..N carrying the printed weight."""
    params.validate_measure_mode()
    Nint = int(params.N)
    return DiscreteMeasure((x, dual_hahn_weight(params, x)) for x in range(Nint + 1))


def dual_hahn_norm(n: int, params: DualHahnParams) -> Fraction:
    """⟨ρ, R_n²⟩ in closed form; zero beyond n = N."""
    if params.N.denominator != 1 or params.N < 0:
        raise ParameterViolation("needs N a nonnegative integer")
    if n < 0:
        raise ParameterViolation("needs n >= 0")
    N = int(params.N)
    if n > N:
        return Fraction(0)
    alpha, beta = params.alpha, params.beta
    num = pochhammer(Fraction(-N), n) ** 2
    den = (
        Fraction(factorial(n)) ** 2
        * binomial_general(alpha + n, n)
        * binomial_general(beta + N - n, N - n)
    )
    return num / den


def hahn(n: int, alpha, beta, N) -> Poly:
    """h_n as a degree-n polynomial in x.

    Negative n yields the zero polynomial.
    """
    if n < 0:
        return Poly()
    alpha, beta, N = rat(alpha), rat(beta), rat(N)
    s = alpha + beta
    if s.denominator == 1 and -2 * n <= s <= -1:
        raise ParameterViolation(
            f"alpha+beta = {rat_str(s)} is a negative integer in [-2n, -1]"
        )
    total = Poly()
    for j in range(n + 1):
        coeff = (
            pochhammer(Fraction(-n), j)
            * pochhammer(s + n + 1, j)
            * pochhammer(-N + j, n - j)
            * pochhammer(alpha + j + 1, n - j)
            / factorial(j)
        )
        if coeff:
            total = total + pochhammer(Poly([0, -1]), j) * coeff
    if total.degree != n:
        raise ParameterViolation(f"degree dropped to {total.degree} at n = {n}")
    return total


def hahn_eigenvalue(n: int, alpha, beta) -> Fraction:
    """n(n+α+β+1), the second-order difference eigenvalue of h_n."""
    alpha, beta = rat(alpha), rat(beta)
    return n * (n + alpha + beta + 1)


def verify_hahn_2nd_order(n: int, alpha, beta, N) -> bool:
    """B(x)h_n(x+1) − (B+D)(x)h_n(x) + D(x)h_n(x−1) = n(n+α+β+1)h_n(x)."""
    alpha, beta, N = rat(alpha), rat(beta), rat(N)
    x = Poly.x()
    B = (x + alpha + 1) * (x - N)
    D = x * (x - beta - N - 1)
    h = hahn(n, alpha, beta, N)
    lhs = B * h.shift_arg(1) - (B + D) * h + D * h.shift_arg(-1)
    return lhs == h * hahn_eigenvalue(n, alpha, beta)


def verify_identity_sum(n: int, params: DualHahnParams) -> bool:
    """Σ_{j=0}^n R_j^{α,β,N} = R_n^{α,β,N−1} as equality in λ."""
    lhs = Poly()
    for j in range(n + 1):
        lhs = lhs + dual_hahn(j, params).coeffs_lambda
    shifted = DualHahnParams(params.alpha, params.beta, params.N - 1)
    return lhs == dual_hahn(n, shifted).coeffs_lambda


def verify_identity_fwd_shift(n: int, params: DualHahnParams) -> bool:
    """Δ_x R_n(λ(x)) = ((2x+α+β+2)/(α+1))·R_{n−1}^{α+1,β,N−1}(λ^{α+1,β}(x))."""
    alpha, beta, N = params.alpha, params.beta, params.N
    if alpha + 1 == 0:
        raise ParameterViolation("alpha = -1 makes the right side undefined")
    rn = dual_hahn(n, params).x_view()
    lhs = rn.shift_arg(1) - rn
    shifted = DualHahnParams(alpha + 1, beta, N - 1)
    rhs_factor = Poly([alpha + beta + 2, 2]) * Fraction(1, 1) * (Fraction(1) / (alpha + 1))
    rhs = rhs_factor * dual_hahn(n - 1, shifted).x_view()
    return lhs == rhs


def verify_identity_genfun(x: int, params: DualHahnParams, K: int) -> bool:
    """(1−t)^{N−x}·₂F₁(−x, −x−β; α+1; t) = Σ_n R_n(λ(x))tⁿ through order K."""
    alpha, beta, N = params.alpha, params.beta, params.N
    if N.denominator == 1 and N >= 0:
        raise ParameterViolation("needs N outside {0,1,2,...}")
    if x < 0:
        raise ParameterViolation("needs x in {0,1,2,...}")
    f21 = [Fraction(0)] * (K + 1)
    for k in range(min(x, K) + 1):
        f21[k] = (
            pochhammer(Fraction(-x), k)
            * pochhammer(-x - beta, k)
            / (pochhammer(alpha + 1, k) * factorial(k))
        )
    lhs = series_pow(N - x, K) * Series(f21, K)
    lat = params.lattice()
    lam = lambda_eval(lat, x)
    rhs = Series([dual_hahn(n, params)(lam) for n in range(K + 1)], K)
    return lhs == rhs
