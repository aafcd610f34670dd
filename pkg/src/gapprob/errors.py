"""Exception hierarchy.

Two families matter to callers: :class:`DomainError` for inputs outside an
operation's domain (the CLI maps these to exit code 2) and
:class:`NumericalFault` for computations that broke down at the requested
precision (exit code 3).
"""


class GapProbError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(GapProbError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleInput(DomainError):
    """The argument sits on a pole of a map or function."""


class BranchAmbiguity(DomainError):
    """A point on a branch cut was given without a boundary side."""


class SectorViolation(DomainError):
    """A Hankel argument lies outside the sector where its expansion is valid."""


class NumericalFault(GapProbError, ArithmeticError):
    """A computation failed at the configured precision."""


class NonPositivePivot(NumericalFault):
    """Cholesky met a non-positive pivot; raise the precision or shrink n."""


class SignFlip(NumericalFault):
    """A Fredholm determinant came out non-positive; the quadrature is too coarse."""


class SingularResolvent(NumericalFault):
    """``I - eta*K`` was numerically singular during a resolvent solve."""


class PrecisionFault(NumericalFault):
    """Iteration failed to converge or a step size fell below the roundoff floor."""
