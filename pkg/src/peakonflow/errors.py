"""Exception hierarchy.

Input problems derive from :class:`InputError` (also a ``ValueError``);
numerical failures derive from :class:`NumericalError` (also an
``ArithmeticError``).  The CLI maps these onto exit codes.
"""


class PeakonFlowError(Exception):
    """Base class for all library errors."""


class InputError(PeakonFlowError, ValueError):
    """Invalid input data."""


class NumericalError(PeakonFlowError, ArithmeticError):
    """A computation could not be completed reliably."""


class PoleEvaluationError(InputError):
    pass


class LevelEqualsAlphaError(InputError):
    pass


class ZeroFunctionError(InputError):
    pass


class DomainError(InputError):
    pass


class CoincidentPositionError(InputError):
    pass


class BoundaryMassError(InputError):
    pass


class DegenerateBoundaryError(InputError):
    pass


class InadmissibleParameterError(InputError):
    """Chart parameter outside the admissible range (CLI exit code 4)."""


class ChartMismatchError(InputError):
    pass


class NormalizationError(InputError):
    """Weyl data violates its normalization at zero."""


class ReconstructionError(InputError):
    """Continued-fraction peeling produced a non-positive mass or gap,
    or did not terminate after the expected number of steps.  Either way
    the Weyl data do not come from a string."""


class GradientConsistencyError(NumericalError):
    pass


class ConvergenceError(NumericalError):
    pass


class NonRealSpectrumError(NumericalError):
    pass


class CollisionError(NumericalError):
    """Two peakons met; carries the partial trajectory."""

    def __init__(self, message, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory


class StepFailureError(NumericalError):
    pass
