"""Exception hierarchy shared by every wgqed module.

Each exception carries the process exit code the CLI maps it to:
- 2: usage / validation failures
- 3: numerical failures (solver instability, singular systems)
"""


class WgqedError(Exception):
    """Base class for all wgqed errors"""
    exit_code = 1


class ValidationError(WgqedError):
    """Raised when a scenario, option or operation precondition is invalid"""
    exit_code = 2


class SpectralTruncationError(ValidationError):
    """Raised when the k-grid cannot hold the input spectrum"""
    pass


class NumericalError(WgqedError):
    """Base class for solver failures"""
    exit_code = 3


class StepSizeError(NumericalError):
    """Raised when the time step exceeds the smallest nonzero retardation delay"""
    pass


class InstabilityError(NumericalError):
    """Raised when an atomic amplitude leaves the unit disk"""
    pass


class SingularSystemError(NumericalError):
    """Raised when the spectral linear system is singular and regularization is off"""
    pass


class QuadratureError(NumericalError):
    """Raised when a k-space quadrature does not contain its integrand"""
    pass
