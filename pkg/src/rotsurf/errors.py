"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the domain of a function (non-finite input, bad modulus,
    negative radicand)."""


class RangeError(ArithmeticError):
    """Result is infinite or the integration path hits a pole."""

    def __init__(self, message, singular_at=None):
        super().__init__(message)
        self.singular_at = singular_at


class InfeasibleSpecError(ValueError):
    """The integration constant admits no real profile for this surface class."""

    def __init__(self, message, feasible=None):
        super().__init__(message)
        self.feasible = feasible


class DegenerateMetricError(ArithmeticError):
    """First fundamental form is (numerically) singular at a sample."""


class ClosureNotFound(RuntimeError):
    """No sign change of the closure defect inside the bracket."""

    def __init__(self, message, table=()):
        super().__init__(message)
        self.table = list(table)
