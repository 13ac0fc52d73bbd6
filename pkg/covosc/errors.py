"""Exceptions and warnings raised by covosc."""


class CovoscError(Exception):
    """Base class for every error raised by the package."""


class DomainError(CovoscError, ValueError):
    """An argument lies outside the domain where a formula is defined."""


class ConfigError(DomainError):
    """A scan or CLI setting is invalid.

    ``field`` names the offending setting so the CLI can point at the flag.
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class QuadratureError(CovoscError, ArithmeticError):
    """An integrand produced a non-finite sample at a quadrature node."""

    def __init__(self, node: tuple[float, ...], value: float):
        coords = ", ".join(f"{c:.6g}" for c in node)
        super().__init__(f"non-finite integrand value {value!r} at node ({coords})")
        self.node = node
        self.value = value


class AccuracyError(CovoscError, ArithmeticError):
    """Two quadrature estimates of the same integral disagree."""

    def __init__(self, estimate: float, reference: float, tolerance: float):
        super().__init__(
            f"quadrature did not converge: {estimate!r} vs {reference!r} "
            f"(difference {abs(estimate - reference):.3e} > {tolerance:.1e})"
        )
        self.estimate = estimate
        self.reference = reference
        self.tolerance = tolerance


class NonFiniteValueError(CovoscError, ArithmeticError):
    """A computed table entry is NaN or infinite."""

    def __init__(self, row: tuple[float, ...]):
        super().__init__(f"non-finite entry in row {row}")
        self.row = row


class TruncationWarning(UserWarning):
    """A truncated spectral sum leaves more probability mass than allowed."""
