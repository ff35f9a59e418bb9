"""Exception types raised across the package."""


class SymlogError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(SymlogError):
    """Operands have incompatible or non-square shapes."""


class SingularMatrix(SymlogError):
    """An LU pivot underflowed the relative singularity threshold."""


class SingularIteration(SymlogError):
    """I + 3ZY became numerically singular inside the coupled iteration."""


class MaxIterationsExceeded(SymlogError):
    """The iteration hit its cap without meeting the convergence test.

    For unitary input this typically means the spectrum touches -1, where
    the square root iteration oscillates instead of contracting.
    """


class NotNearlyUnitary(SymlogError):
    """Input failed the unitarity or symmetry-residual precondition."""


class NotChiral(SymlogError):
    """Input is not close to a chiral (grading-odd conjugation) unitary."""


class AmbiguousSignature(SymlogError):
    """An eigenvalue of U*Gamma is too close to zero to classify its sign."""


class ObstructionDetected(SymlogError):
    """The chiral index is nonzero: no structured root or log exists."""


class NormTooLarge(SymlogError):
    """Argument norm is outside the convergence region of the approximant."""


class UnsupportedClass(SymlogError):
    """The requested operation is not available for this symmetry class."""


class OperationCancelled(SymlogError):
    """A cooperative cancellation token stopped a long-running iteration."""


class MatrixFormatError(SymlogError):
    """A matrix file could not be parsed or failed validation."""


def exit_code(exc):
    """Map an exception to the process exit code used by the CLI and bench.

    2 means a topological obstruction, 3 a numerical failure, 4 an I/O or
    validation problem, and 1 anything unexpected.
    """
    if isinstance(exc, ObstructionDetected):
        return 2
    if isinstance(exc, (MaxIterationsExceeded, SingularIteration,
                        SingularMatrix, NormTooLarge)):
        return 3
    if isinstance(exc, (SymlogError, OSError, ValueError)):
        return 4
    return 1
