"""Exception types shared across the package.

Two families matter for callers (and for CLI exit codes): inputs that are
malformed or out of contract (ValidationError, exit code 2) and inputs that
are formally valid but outside the numerical/physical domain of the model
(DomainError, exit code 3).
"""


class ValidationError(ValueError):
    """Malformed or out-of-contract input (bad config key, negative count...)."""


class DomainError(ValueError):
    """Input outside the validity domain of the model (pole proximity,
    temperature window, near-degenerate mode sets...)."""


class SeparabilityError(DomainError):
    """Target detection mode lies (numerically) inside the span of the
    interfering modes; the parameter cannot be measured independently."""
