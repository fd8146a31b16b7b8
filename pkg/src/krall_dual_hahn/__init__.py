"""Exact construction and verification of bispectral dual Hahn polynomials.

The package builds, in exact rational arithmetic, orthogonal polynomial
families obtained from the dual Hahn family by Christoffel transforms of
their discrete orthogonality measure, together with the higher-order
difference operators that have those families as eigenfunctions.
"""

from .exact_algebra import Poly, RatFun, Rational, Series, rat, rat_str
from .exceptions import (
    DegenerateCasorati,
    EmptyOperator,
    NonExactDivision,
    NotInLambdaRing,
    NotPolynomial,
    ParameterViolation,
)
from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = [
    "Poly",
    "RatFun",
    "Rational",
    "Series",
    "rat",
    "rat_str",
    "ParameterViolation",
    "NotInLambdaRing",
    "EmptyOperator",
    "DegenerateCasorati",
    "NonExactDivision",
    "NotPolynomial",
    "KERNEL_BACKEND",
    "__version__",
]
