"""Exception hierarchy shared by the library and the CLI.

Every error carries the exit code the CLI reports for it: 2 for inputs
outside the validity domain of a formula or contour, 3 for numerical
failures on otherwise admissible input.
"""


class HyperconicalError(Exception):
    exit_code = 3


class DomainError(HyperconicalError):
    """Input rejected before any numerics run."""

    exit_code = 2


class OutsideStrip(DomainError):
    pass


class DomainViolation(DomainError):
    pass


class PolePinch(DomainError):
    """An integrand pole comes too close to the integration contour."""


class TailDivergence(DomainError):
    """The integrand does not decay along the requested contour."""


class ContourGate(DomainError):
    pass


class BadC(DomainError):
    pass


class LatticeHit(DomainError):
    """A hyperbolic gamma factor is evaluated at one of its poles or zeros."""


class RecurrenceBreakdown(DomainError):
    pass


class DivisionByZero(DomainError):
    pass


class BranchAmbiguity(DomainError):
    pass


class NumericsError(HyperconicalError):
    exit_code = 3


class NonConvergence(NumericsError):
    pass


class EvaluationFailure(NumericsError):
    pass


class LadderOverflow(NumericsError):
    pass
