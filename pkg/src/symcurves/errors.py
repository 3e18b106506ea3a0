class SymcurvesError(Exception):
    """Base class for library errors."""


class InvalidParameters(SymcurvesError, ValueError):
    pass


class BudgetExceeded(SymcurvesError):
    """A field level is larger than the configured enumeration budget."""


class ExponentOverflow(SymcurvesError, OverflowError):
    """A polynomial exponent does not fit in a signed 64-bit integer."""


class UnsupportedRamification(SymcurvesError):
    """A Kummer place has r = gcd(degree, valuation) > 1; residue degrees are unknown."""


class ConvergenceError(SymcurvesError, ArithmeticError):
    """A numeric search left its bracket or missed its residual tolerance."""
