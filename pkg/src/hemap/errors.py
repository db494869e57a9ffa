"""Exception types shared across the package."""


class HemapError(Exception):
    """Base class for package errors."""


class DomainError(HemapError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class EmptyStreamError(HemapError, ValueError):
    """Differentiation past the end of a finite coefficient stream."""


class DegenerateMapError(HemapError, ValueError):
    """Both leading coefficients vanish; no sense can be assigned."""


class NormalizationError(HemapError, ValueError):
    """A required normalizing coefficient is zero."""


class NotApplicableError(HemapError, ValueError):
    """Inputs do not have the shape the criterion requires."""


class InsufficientDataError(HemapError, ValueError):
    """Too few usable samples in the requested index window."""


class ParameterError(HemapError, ValueError):
    """A named map parameter is out of its documented range."""


class EvaluationOverflowError(HemapError, OverflowError):
    """A reconstructed series term exceeds the double range."""
