"""Exception hierarchy shared by every module.

Value-type failures also derive from ``ValueError`` so that callers catching
``ValueError`` keep working.
"""


class RydbergEitError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameter(RydbergEitError, ValueError):
    pass


class InvalidQuantumNumbers(InvalidParameter):
    pass


class ComputedVelocityExceedsC(InvalidParameter):
    """Group velocity came out >= c: the inputs are outside the slow-light regime."""


class ZeroSeparation(InvalidParameter):
    """The 3D dipole-dipole potential was asked for at contact."""


class GridTooCoarse(InvalidParameter):
    pass


class PulseLeftMedium(InvalidParameter):
    pass


class EnvelopeTooSharp(InvalidParameter):
    pass


class PhaseWrapInfeasible(InvalidParameter):
    pass


class MissingInput(InvalidParameter):
    def __init__(self, name: str) -> None:
        super().__init__(f"Missing input {name!r}")
        self.name = name


class ScenarioParseError(InvalidParameter):
    pass


class QuadratureNonConvergence(RydbergEitError, ArithmeticError):
    pass


class ConstraintFailure(RydbergEitError):
    pass
