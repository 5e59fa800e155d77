"""Exception hierarchy.

``ComputationError`` subclasses signal that the inputs were well-formed but
the numerical work could not produce a valid answer; the CLI maps them to
exit code 2.
"""


class DeformLabError(Exception):
    """Base class for all package errors."""


class ComputationError(DeformLabError):
    """Numerical failure or incompatible inputs."""


class NonPositiveMonitor(ComputationError):
    pass


class EmptyImage(ComputationError):
    pass


class TimeOutOfRange(ComputationError):
    pass


class IncompatibleRHS(ComputationError):
    pass


class SolverDiverged(ComputationError):
    pass


class FoldDetected(ComputationError):
    """The deformed grid has a non-positive Jacobian at an interior node.

    The offending grid is kept on the exception for diagnosis.
    """

    def __init__(self, message, grid=None, min_jacobian=None):
        super().__init__(message)
        self.grid = grid
        self.min_jacobian = min_jacobian


class NonFiniteField(ComputationError):
    pass


class DimensionMismatch(ComputationError):
    pass


class WindowTooLarge(ComputationError):
    pass


class InvalidScore(ComputationError):
    pass


class EmptyTable(ComputationError):
    pass


class InvalidProbability(ComputationError):
    pass


class EmptyBatch(ComputationError):
    pass


class NonFiniteInput(ComputationError):
    pass
