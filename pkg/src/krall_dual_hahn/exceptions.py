"""Error types shared across the package."""


class ParameterViolation(ValueError):
    """Parameters outside the validity region of a family or measure."""


class NotInLambdaRing(ValueError):
    """Polynomial in x is not a polynomial in the lattice variable."""


class EmptyOperator(ValueError):
    """The zero difference operator has no order window."""


class DegenerateCasorati(ArithmeticError):
    """A Casorati minor that must not vanish is zero."""


class NonExactDivision(ArithmeticError):
    """A quotient that must be polynomial left a remainder."""


class NotPolynomial(ArithmeticError):
    """A rational function that must reduce to a polynomial did not."""
