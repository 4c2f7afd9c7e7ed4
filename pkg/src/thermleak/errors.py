"""Exception hierarchy shared across the package.

Exit-code mapping used by the CLI:
  2 -> ProjectValidationError (bad input files / parameters)
  3 -> co-simulation non-convergence or thermal runaway (reported via status,
       not an exception)
  4 -> numerical failures (BracketError, QuadratureBudgetError)
"""


class ThermleakError(Exception):
    """Base class for all package errors."""


class DomainError(ThermleakError, ValueError):
    """An argument is outside the physical/mathematical domain of an operation."""


class SingularityError(DomainError):
    """Evaluation requested exactly on a field singularity (r = 0, on-segment)."""


class TopologyError(ThermleakError):
    """Gate network is not complementary for the given input vector."""


class ResourceError(ThermleakError):
    """A configured resource cap (e.g. image order) was exceeded."""


class BracketError(ThermleakError):
    """Root bracketing failed: no sign change over the search interval."""


class QuadratureBudgetError(ThermleakError):
    """Adaptive quadrature ran out of subdivisions.

    Carries the best estimate achieved and its error bound so callers can
    decide whether the partial result is usable.
    """

    def __init__(self, estimate: float, error_bound: float, message: str = ""):
        self.estimate = estimate
        self.error_bound = error_bound
        super().__init__(
            message
            or f"quadrature budget exhausted (estimate={estimate:.6e}, "
            f"error bound={error_bound:.2e})"
        )


class ProjectValidationError(ThermleakError, ValueError):
    """A project file failed schema or cross-reference validation."""
