"""Quadratic lattice, its polynomial subring, and shift-difference operators.

The lattice is λ(x) = x(x+α+β+1).  Polynomials in λ form a subring of the
polynomials in x, characterized as the fixed points of the involution
x ↦ −(x+α+β+1).  Difference operators act through the shifts
𝔰_j : p(λ(x)) ↦ p(λ(x+j)) and carry rational-function coefficients in x.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .exact_algebra import Poly, RatFun, falling_product, rat, rat_str
from .exceptions import EmptyOperator, NotInLambdaRing


class Lattice:
    """Parameter pair (α, β) and the quadratic map λ(x) = x(x+α+β+1)."""

    __slots__ = ("alpha", "beta")

    def __init__(self, alpha, beta):
        object.__setattr__(self, "alpha", rat(alpha))
        object.__setattr__(self, "beta", rat(beta))

    def __setattr__(self, name, value):
        raise AttributeError("Lattice is immutable")

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.alpha == other.alpha and self.beta == other.beta

    def __hash__(self):
        return hash((self.alpha, self.beta))

    def __repr__(self):
        return f"Lattice(alpha={rat_str(self.alpha)}, beta={rat_str(self.beta)})"

    @property
    def sum1(self) -> Fraction:
        """α + β + 1, the second root offset of λ."""
        return self.alpha + self.beta + 1

    def lambda_x(self) -> Poly:
        """λ(x) as a polynomial in x."""
        return Poly([0, self.sum1, 1])


def lambda_eval(lat: Lattice, x) -> Fraction:
    x = rat(x)
    return x * (x + lat.sum1)


def involution(lat: Lattice, f: Poly) -> Poly:
    """f(−(x+α+β+1)); fixes exactly the polynomials in λ."""
    return f(Poly([-lat.sum1, -1]))


class LambdaPoly:
    """A polynomial in the lattice variable λ."""

    __slots__ = ("lattice", "coeffs_lambda")

    def __init__(self, lattice: Lattice, coeffs_lambda: Poly):
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "coeffs_lambda", coeffs_lambda)

    def __setattr__(self, name, value):
        raise AttributeError("LambdaPoly is immutable")

    def __eq__(self, other):
        if not isinstance(other, LambdaPoly):
            return NotImplemented
        return self.lattice == other.lattice and self.coeffs_lambda == other.coeffs_lambda

    def __hash__(self):
        return hash((self.lattice, self.coeffs_lambda))

    @property
    def degree(self) -> int:
        return self.coeffs_lambda.degree

    def x_view(self) -> Poly:
        """Substitute λ(x); the same element seen in the ambient ring."""
        return self.coeffs_lambda(self.lattice.lambda_x())

    def __call__(self, lam) -> Fraction:
        return self.coeffs_lambda(rat(lam))

    def __repr__(self):
        return f"LambdaPoly({self.coeffs_lambda!r} in lambda, {self.lattice!r})"


def mu_basis_x(lat: Lattice, j: int) -> Poly:
    """μ_j(λ(x)) = Π_{i=0}^{j−1} (x−i)(x+α+β+1+i), monic of degree 2j in x."""
    out = Poly([1])
    for i in range(j):
        out = out * Poly([-i, 1]) * Poly([lat.sum1 + i, 1])
    return out


def mu_basis_lambda(lat: Lattice, j: int) -> Poly:
    """μ_j(λ) = Π_{i=0}^{j−1} (λ − λ(i)) as a polynomial in λ."""
    return falling_product(Poly.x(), [lambda_eval(lat, i) for i in range(j)])


def to_lambda_poly(lat: Lattice, f: Poly) -> LambdaPoly:
    """Rewrite an involution-invariant polynomial in x as a polynomial in λ.

    Works down the degree by eliminating the top coefficient against the
    falling-product basis μ_j; each step drops the x-degree by at least two
    because an invariant polynomial has no odd-degree leading term.
    """
    if involution(lat, f) != f:
        raise NotInLambdaRing("polynomial is not invariant under x -> -(x+alpha+beta+1)")
    g = f
    mu_coeffs: dict[int, Fraction] = {}
    while not g.is_zero():
        d = g.degree
        if d % 2 != 0:
            raise NotInLambdaRing(f"odd degree {d} survived elimination")
        j = d // 2
        c = g.leading()
        mu_coeffs[j] = c
        g = g - mu_basis_x(lat, j) * c
        if not g.is_zero() and g.degree >= d:
            raise NotInLambdaRing("degree failed to drop during elimination")
    q = Poly()
    for j, c in mu_coeffs.items():
        q = q + mu_basis_lambda(lat, j) * c
    return LambdaPoly(lat, q)


class DiffOp:
    """Finite sum Σ_j h_j(x)·𝔰_j with rational-function coefficients."""

    __slots__ = ("lattice", "terms")

    def __init__(self, lattice: Lattice, terms: dict):
        clean = {}
        for j, coeff in terms.items():
            if not isinstance(coeff, RatFun):
                coeff = RatFun(coeff)
            if not coeff.is_zero():
                clean[int(j)] = coeff
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def __setattr__(self, name, value):
        raise AttributeError("DiffOp is immutable")

    @staticmethod
    def identity(lattice: Lattice) -> "DiffOp":
        return DiffOp(lattice, {0: RatFun.one()})

    @staticmethod
    def zero(lattice: Lattice) -> "DiffOp":
        return DiffOp(lattice, {})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.lattice == other.lattice and self.terms == other.terms

    def __hash__(self):
        return hash((self.lattice, tuple(self.terms.items())))

    def __neg__(self):
        return DiffOp(self.lattice, {j: -c for j, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        if self.lattice != other.lattice:
            raise ValueError("operators live on different lattices")
        out = dict(self.terms)
        for j, c in other.terms.items():
            out[j] = out.get(j, RatFun.zero()) + c
        return DiffOp(self.lattice, out)

    def __sub__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        """Left multiplication by a scalar or a rational function of x."""
        if not isinstance(scalar, (int, Fraction, Poly, RatFun)):
            return NotImplemented
        return DiffOp(self.lattice, {j: c * scalar for j, c in self.terms.items()})

    __rmul__ = __mul__

    def to_json(self) -> list[dict]:
        return [{"shift": j, "coeff": c.to_json()} for j, c in self.terms.items()]

    @staticmethod
    def from_json(lattice: Lattice, data: list[dict]) -> "DiffOp":
        return DiffOp(lattice, {d["shift"]: RatFun.from_json(d["coeff"]) for d in data})

    def __repr__(self):
        if not self.terms:
            return "DiffOp(0)"
        parts = [f"({c!r})*s_{j}" for j, c in self.terms.items()]
        return "DiffOp(" + " + ".join(parts) + ")"


def apply_op(T: DiffOp, p: LambdaPoly) -> RatFun:
    """Σ_j h_j(x)·p(λ(x+j)), normalized."""
    if T.lattice != p.lattice:
        raise ValueError("operator and polynomial live on different lattices")
    px = p.x_view()
    out = RatFun.zero()
    for j, coeff in T.terms.items():
        out = out + coeff * px.shift_arg(j)
    return out


def compose_ops(A: DiffOp, B: DiffOp) -> DiffOp:
    """(f·𝔰_j)∘(g·𝔰_k) = f(x)·g(x+j)·𝔰_{j+k}, extended bilinearly."""
    if A.lattice != B.lattice:
        raise ValueError("operators live on different lattices")
    out: dict[int, RatFun] = {}
    for j, f in A.terms.items():
        for k, g in B.terms.items():
            term = f * g.shift_arg(j)
            key = j + k
            out[key] = out.get(key, RatFun.zero()) + term
    return DiffOp(A.lattice, out)


def poly_of_op(P: Poly, D: DiffOp) -> DiffOp:
    """Evaluate the polynomial P at the operator D (Horner under composition)."""
    ident = DiffOp.identity(D.lattice)
    out = DiffOp.zero(D.lattice)
    for c in reversed(P.coeffs):
        out = compose_ops(out, D) + ident * c
    return out


def is_in_lambda_algebra(T: DiffOp, max_degree: int) -> bool:
    """Check T maps λ-polynomials to λ-polynomials on the basis λ^k, k ≤ max_degree."""
    lat = T.lattice
    for k in range(max_degree + 1):
        p = LambdaPoly(lat, Poly([0] * k + [1]))
        image = apply_op(T, p)
        if not image.is_poly():
            return False
        g = image.as_poly()
        if involution(lat, g) != g:
            return False
    return True


def op_order_window(T: DiffOp) -> tuple[int, int]:
    """(smallest, largest) shift offset with a nonzero coefficient."""
    if T.is_zero():
        raise EmptyOperator("the zero operator has no order window")
    keys = list(T.terms)
    return keys[0], keys[-1]
