"""Exact scalar, polynomial, rational-function and series arithmetic.

Everything downstream runs on four value types:

* ``Rational`` -- arbitrary-precision exact rationals (``fractions.Fraction``).
* ``Poly`` -- dense univariate polynomials over the rationals, immutable,
  no trailing zero coefficients; the zero polynomial has degree -1.
* ``RatFun`` -- quotients of two ``Poly`` kept normalized: coprime, monic
  denominator.
* ``Series`` -- truncated power series with an explicit order.

Determinants over ``RatFun`` clear each row to a common polynomial
denominator and run fraction-free (Bareiss) elimination on an integerized
matrix, which keeps intermediate blow-up polynomial instead of rational.
All values are immutable and all functions are pure.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Iterable, Sequence, Union

from . import kernels
from .exceptions import NonExactDivision

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def rat(value: Union[int, str, Fraction]) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(str(value).strip())


def rat_str(value: Fraction) -> str:
    """Canonical "p/q" form, plain "p" for integers."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Poly:
    """Dense univariate polynomial over exact rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Union[int, Fraction]] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @staticmethod
    def const(c: Union[int, Fraction]) -> "Poly":
        return Poly([c])

    @staticmethod
    def x() -> "Poly":
        return Poly([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def __hash__(self):
        return hash(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other)
        return NotImplemented

    def __bool__(self):
        return bool(self.coeffs)

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly()
            return Poly([c * other for c in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return Poly(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lead = other.coeffs[-1]
        q = [_ZERO] * max(len(rem) - db, 0)
        for k in range(len(rem) - db - 1, -1, -1):
            c = rem[db + k] / lead
            if c:
                q[k] = c
                for j, bj in enumerate(other.coeffs):
                    rem[j + k] -= c * bj
        return Poly(q), Poly(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divexact(self, other: "Poly") -> "Poly":
        """Quotient by an exact divisor; raises NonExactDivision otherwise."""
        q, r = divmod(self, other)
        if not r.is_zero():
            raise NonExactDivision(f"remainder of degree {r.degree} left")
        return q

    def __call__(self, arg):
        """Evaluate at a scalar, or compose with a Poly argument."""
        if isinstance(arg, Poly):
            out = Poly()
            for c in reversed(self.coeffs):
                out = out * arg + c
            return out
        out = _ZERO
        for c in reversed(self.coeffs):
            out = out * arg + c
        return out

    def shift_arg(self, j: Union[int, Fraction]) -> "Poly":
        """p(x + j)."""
        if j == 0 or self.is_zero():
            return self
        return self(Poly([j, 1]))

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def to_json(self) -> list[str]:
        return [rat_str(c) for c in self.coeffs]

    @staticmethod
    def from_json(data: Sequence[Union[str, int]]) -> "Poly":
        return Poly([rat(c) for c in data])

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            term = rat_str(c) if i == 0 else (f"{rat_str(c)}*x^{i}" if i > 1 else f"{rat_str(c)}*x")
            parts.append(term)
        return "Poly(" + " + ".join(parts) + ")"


def _as_poly(value):
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly.const(value)
    return NotImplemented


def _integerize(p: Poly) -> tuple[list[int], int]:
    """Scale to integer coefficients; returns (coeffs, scale) with p = coeffs/scale."""
    if p.is_zero():
        return [], 1
    scale = reduce(lcm, (c.denominator for c in p.coeffs), 1)
    return [int(c * scale) for c in p.coeffs], scale


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the rationals (1 for coprime inputs, 0 only for gcd(0,0))."""
    if a.is_zero() and b.is_zero():
        return Poly()
    ia, _ = _integerize(a)
    ib, _ = _integerize(b)
    g = Poly(kernels.zp_gcd(ia, ib))
    return g * (_ONE / g.leading())


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return Poly()
    prod = a * b
    out = prod.divexact(poly_gcd(a, b))
    return out * (_ONE / out.leading())


class RatFun:
    """Normalized quotient of two polynomials: coprime, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_poly(num)
        den = Poly([1]) if den is None else _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Poly(), Poly([1])
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.divexact(g), den.divexact(g)
            lead = den.leading()
            if lead != 1:
                inv = _ONE / lead
                num, den = num * inv, den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    @staticmethod
    def zero() -> "RatFun":
        return RatFun(Poly())

    @staticmethod
    def one() -> "RatFun":
        return RatFun(Poly([1]))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> Poly:
        """The numerator when the denominator is trivial; raises otherwise."""
        if not self.is_poly():
            raise NonExactDivision(f"denominator of degree {self.den.degree} left")
        return self.num

    def __hash__(self):
        return hash((self.num, self.den))

    def __eq__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __bool__(self):
        return not self.is_zero()

    def __neg__(self):
        out = object.__new__(RatFun)
        object.__setattr__(out, "num", -self.num)
        object.__setattr__(out, "den", self.den)
        return out

    def __add__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        # cross-cancel before multiplying to keep degrees down
        a, b = self.num, other.den
        g = poly_gcd(a, b)
        if g.degree > 0:
            a, b = a.divexact(g), b.divexact(g)
        c, d = other.num, self.den
        g = poly_gcd(c, d)
        if g.degree > 0:
            c, d = c.divexact(g), d.divexact(g)
        return RatFun(a * c, b * d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return self * RatFun(other.den, other.num)

    def __rtruediv__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __call__(self, arg: Fraction) -> Fraction:
        d = self.den(arg)
        if d == 0:
            raise ZeroDivisionError(f"pole at {arg}")
        return self.num(arg) / d

    def shift_arg(self, j: Union[int, Fraction]) -> "RatFun":
        if j == 0:
            return self
        out = object.__new__(RatFun)
        num, den = self.num.shift_arg(j), self.den.shift_arg(j)
        # shifting preserves coprimality and the monic denominator
        object.__setattr__(out, "num", num)
        object.__setattr__(out, "den", den)
        return out

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @staticmethod
    def from_json(data: dict) -> "RatFun":
        return RatFun(Poly.from_json(data["num"]), Poly.from_json(data["den"]))

    def __repr__(self):
        if self.is_poly():
            return f"RatFun({self.num!r})"
        return f"RatFun({self.num!r} / {self.den!r})"


def _as_ratfun(value):
    if isinstance(value, RatFun):
        return value
    if isinstance(value, (int, Fraction, Poly)):
        return RatFun(_as_poly(value))
    return NotImplemented


class Series:
    """Power series truncated at an explicit order K (K+1 coefficients)."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[Union[int, Fraction]], order: int):
        cs = [Fraction(c) for c in coeffs]
        if len(cs) < order + 1:
            cs += [_ZERO] * (order + 1 - len(cs))
        object.__setattr__(self, "coeffs", tuple(cs[: order + 1]))
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def __add__(self, other):
        k = min(self.order, other.order)
        return Series([a + b for a, b in zip(self.coeffs, other.coeffs)], k)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Series([c * other for c in self.coeffs], self.order)
        k = min(self.order, other.order)
        out = [_ZERO] * (k + 1)
        for i, ai in enumerate(self.coeffs[: k + 1]):
            if ai:
                for j, bj in enumerate(other.coeffs[: k + 1 - i]):
                    out[i + j] += ai * bj
        return Series(out, k)

    __rmul__ = __mul__

    def __repr__(self):
        return f"Series({[rat_str(c) for c in self.coeffs]}, order={self.order})"


def pochhammer(u, j: int):
    """Rising product u(u+1)...(u+j-1); 1 (of the matching kind) for j=0."""
    if j < 0:
        raise ValueError("pochhammer needs j >= 0")
    if isinstance(u, Poly):
        out = Poly([1])
        for i in range(j):
            out = out * (u + i)
        return out
    u = Fraction(u)
    out = _ONE
    for i in range(j):
        out *= u + i
    return out


def binomial_general(a, k: int) -> Fraction:
    """binom(a, k) = (a-k+1)_k / k! for rational a and integer k >= 0."""
    if k < 0:
        raise ValueError("binomial needs k >= 0")
    num = pochhammer(Fraction(a) - k + 1, k)
    den = pochhammer(_ONE, k)
    return num / den


def shifted_factorial_s(u, j: int) -> Poly:
    """The polynomial (u - x)_j in x, degree j."""
    return pochhammer(Poly([Fraction(u), -1]), j)


def falling_product(base: Poly, offsets: Sequence[Fraction]) -> Poly:
    """prod over offsets t of (base - t)."""
    out = Poly([1])
    for t in offsets:
        out = out * (base - t)
    return out


def det_ratfun_laplace(matrix: Sequence[Sequence[RatFun]]) -> RatFun:
    """Cofactor-expansion determinant; the small-size oracle."""
    n = len(matrix)
    if n == 0:
        return RatFun.one()
    if n == 1:
        return matrix[0][0]
    total = RatFun.zero()
    for j in range(n):
        entry = matrix[0][j]
        if entry.is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        term = entry * det_ratfun_laplace(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


def det_ratfun(matrix: Sequence[Sequence[RatFun]]) -> RatFun:
    """Exact determinant over rational functions.

    Each row is cleared to its common polynomial denominator, the resulting
    polynomial matrix is scaled to integers row by row, and the determinant
    is computed fraction-free.
    """
    n = len(matrix)
    if n == 0:
        return RatFun.one()
    for row in matrix:
        if len(row) != n:
            raise ValueError("determinant of a non-square matrix")
    int_rows: list[list[list[int]]] = []
    den_total = Poly([1])
    scale_total = 1
    for row in matrix:
        row_den = reduce(poly_lcm, (e.den for e in row))
        den_total = den_total * row_den
        cleared = [e.num * row_den.divexact(e.den) for e in row]
        row_scale = reduce(lcm, (c.denominator for p in cleared for c in p.coeffs), 1)
        scale_total *= row_scale
        int_rows.append([[int(c * row_scale) for c in p.coeffs] for p in cleared])
    det_int = Poly(kernels.bareiss_det(int_rows))
    return RatFun(det_int, den_total * scale_total)


def discrete_antiderivative(f: Poly) -> Poly:
    """The polynomial P with P(x) - P(x-1) = f(x) and P(-1) = 0.

    Built by Newton interpolation through the telescoped partial sums, then
    verified against the defining difference identity.
    """
    if f.is_zero():
        return Poly()
    d = f.degree
    xs = [Fraction(k) for k in range(-1, d + 1)]
    ys = [_ZERO]
    for k in range(0, d + 1):
        ys.append(ys[-1] + f(Fraction(k)))
    coeffs = _newton_coeffs(xs, ys)
    out = Poly()
    basis = Poly([1])
    for c, x0 in zip(coeffs, xs):
        out = out + basis * c
        basis = basis * Poly([-x0, 1])
    if out - out.shift_arg(-1) != f:
        raise AssertionError("difference identity failed after interpolation")
    return out


def _newton_coeffs(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> list[Fraction]:
    coeffs = list(ys)
    for level in range(1, len(xs)):
        for i in range(len(xs) - 1, level - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (xs[i] - xs[i - level])
    return coeffs


def series_pow(exponent, K: int) -> Series:
    """Binomial expansion of (1 - t)^exponent to order K."""
    if K < 0:
        raise ValueError("series order must be >= 0")
    e = Fraction(exponent)
    out = [_ONE]
    for k in range(1, K + 1):
        out.append((-1) ** k * binomial_general(e, k))
    return Series(out, K)
