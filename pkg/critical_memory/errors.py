"""
Exception hierarchy for the critical-memory toolkit

Every error carries the process exit code the CLI reports for it.
"""

from typing import Optional


class CriticalMemoryError(Exception):
    """Base class for all toolkit errors"""

    exit_code = 1

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class InvalidInputError(CriticalMemoryError, ValueError):
    """A precondition on caller-supplied input was violated"""

    exit_code = 2


class ModelValidationError(InvalidInputError):
    """A network model violates its structural invariants"""


class ScenarioError(InvalidInputError):
    """A scenario configuration is incomplete or inconsistent"""


class NumericalAbort(CriticalMemoryError, ArithmeticError):
    """A numerical procedure could not deliver a result within tolerance"""

    exit_code = 3


class NormDriftError(NumericalAbort):
    """Norm or conserved-quantity drift exceeded its per-unit-time limit"""

    def __init__(self, message: str, time: float, drift: float):
        super().__init__(message)
        self.time = time
        self.drift = drift


class InfeasibleSplitError(NumericalAbort):
    """No critical state exists for the requested split"""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class StepUnderflowError(NumericalAbort):
    """Adaptive step halving went below the minimal step"""

    def __init__(self, message: str, last_stable_step: Optional[float]):
        super().__init__(message)
        self.last_stable_step = last_stable_step


class CapacityError(CriticalMemoryError, OverflowError):
    """A configured size or enumeration limit would be exceeded"""

    exit_code = 4


class DimensionLimitError(CapacityError):
    """The truncated Fock space is larger than the dimension limit"""

    def __init__(self, message: str, dimension: int, limit: int):
        super().__init__(message)
        self.dimension = dimension
        self.limit = limit


class EnumerationLimitError(CapacityError):
    """An eager enumeration would visit more candidates than allowed"""


class SearchLimitError(CapacityError):
    """Exhaustive split search requested on too many modes"""


class TruncationError(CapacityError):
    """A coherent state does not fit inside the basis caps"""

    def __init__(self, message: str, mode: int, required_cap: int):
        super().__init__(message)
        self.mode = mode
        self.required_cap = required_cap
