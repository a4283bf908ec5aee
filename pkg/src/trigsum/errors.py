"""Exception hierarchy shared across the package."""


class TrigsumError(Exception):
    """Base class for all package-specific errors."""


class UnknownFunctionError(TrigsumError):
    """Requested catalogue entry does not exist."""

    def __init__(self, name, available):
        self.name = name
        self.available = tuple(available)
        super().__init__(
            f"unknown function {name!r}; available: {', '.join(self.available)}"
        )


class EnvelopeUnavailableError(TrigsumError):
    """Tail evaluation requested for a function without a usable decay envelope."""


class TruncationUnachievableError(TrigsumError):
    """No finite truncation point certifies the requested tail budget."""


class ToleranceNotMetError(TrigsumError):
    """A quadrature result could not be certified to the requested tolerance."""


class NonFiniteSampleError(TrigsumError):
    """An integrand returned NaN or infinity at a quadrature node."""


class GridError(TrigsumError):
    """A parameter grid is malformed or too small for the requested analysis."""


class ComputeBudgetExceededError(TrigsumError):
    """The requested evaluation would exceed the desk-scale panel budget."""
