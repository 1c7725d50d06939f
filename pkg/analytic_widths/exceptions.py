from typing import Any, Dict, Optional


class AnalyticWidthsError(Exception):
    """Base exception class for analytic-widths errors."""

    pass


class InvalidInputError(AnalyticWidthsError):
    """Raised when invalid input is provided."""

    pass


class NumericalError(AnalyticWidthsError):
    """Raised when a numerical computation cannot deliver a trustworthy result."""

    pass


class SeriesTruncationError(NumericalError):
    """Raised when a series tail bound cannot be met within max_terms."""

    pass


class ToleranceUnreachableError(NumericalError):
    """Raised when a requested tolerance is below what binary64 can resolve."""

    pass


class RootNotBracketedError(NumericalError):
    """Raised when the theta equation shows no sign change on the search bracket."""

    def __init__(self, message: str, scan: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.scan = scan or {}


class ThresholdUnreachableError(NumericalError):
    """Raised when a threshold scan exceeds its cap."""

    def __init__(self, message: str, h: float, cap: int):
        super().__init__(message)
        self.h = h
        self.cap = cap


class ConditioningError(NumericalError):
    """Raised when a circulant eigenvalue is too close to zero."""

    def __init__(self, message: str, l: int, modulus: float):
        super().__init__(message)
        self.l = l
        self.modulus = modulus


class DomainError(NumericalError):
    """Raised when an evaluation point lies where the function is undefined."""

    pass


class QuadratureError(NumericalError):
    """Raised when adaptive quadrature cannot reach its tolerance."""

    pass


class OracleFailureError(NumericalError):
    """Raised when a brute-force oracle fails to converge."""

    pass
