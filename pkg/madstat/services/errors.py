"""
Exception hierarchy for madstat services.

The CLI turns these into exit codes (2 for validation and configuration
problems, 3 for numeric and domain problems) and the API into HTTP errors.
"""


class MadStatError(Exception):
    """Base class for every error raised on purpose by madstat."""
    pass


class InputValidationError(MadStatError):
    """
    Raised when user input cannot be accepted.
    Example: a CSV cell that is not a number, an unknown column name
    """
    pass


class ConfigError(MadStatError):
    """
    Raised when a configuration is inconsistent.
    Example: bandwidth >= n, stable rate without a tail model
    """
    pass


class DomainError(MadStatError, ValueError):
    """
    Raised when an argument lies outside the mathematical domain of an operation.
    Example: empty series, alpha outside (1, 2), |b| >= 1
    """
    pass


class RegimeError(DomainError):
    """
    Raised when the declared asymptotic regime does not match the law.
    Example: Gaussian limit requested for an infinite-variance law
    """
    pass
