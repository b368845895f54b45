"""Exception types raised across the package."""


class SimplexMetricsError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(SimplexMetricsError, ValueError):
    pass


class NonSquare(DimensionMismatch):
    pass


class NotSymmetric(SimplexMetricsError, ValueError):
    pass


class NotPositiveDefinite(SimplexMetricsError, ValueError):
    pass


class InvalidDistanceData(SimplexMetricsError, ValueError):
    pass


class EmptySimplex(SimplexMetricsError, ValueError):
    pass


class UnknownVector(SimplexMetricsError, KeyError):
    pass


class BadOrder(SimplexMetricsError, ValueError):
    pass


class DegreeOverflow(SimplexMetricsError, ArithmeticError):
    pass


class OrderTooSmall(SimplexMetricsError, ArithmeticError):
    pass
