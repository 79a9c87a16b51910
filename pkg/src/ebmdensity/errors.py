"""Exception types shared by the numerical modules and the CLI."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConvergenceError(ArithmeticError):
    """An iterative evaluation failed to reach its accuracy target."""


class TruncationCapError(ArithmeticError):
    """A series needed more terms than its cap allows.

    ``partial`` carries whatever was computed before giving up (usually a
    :class:`~ebmdensity.density.DensityResult` whose ``err_estimate`` is
    above the requested tolerance), so callers can still report it.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
