"""Symmetry-preserving square roots, logarithms and diagonalizations of
unitary matrices in the four canonical symmetry classes, with generators
for structured test ensembles and a benchmark harness.
"""

from .errors import (
    AmbiguousSignature,
    DimensionMismatch,
    MatrixFormatError,
    MaxIterationsExceeded,
    NormTooLarge,
    NotChiral,
    NotNearlyUnitary,
    ObstructionDetected,
    OperationCancelled,
    SingularIteration,
    SingularMatrix,
    SymlogError,
    UnsupportedClass,
    exit_code,
)
from .gen import (
    DriveSpec,
    GapSpec,
    SpectralModel,
    aiii_obstructed_unitary,
    floquet_operator,
    gapped_spectral_model,
    haar_orthogonal,
    haar_unitary,
    random_gapped_unitary,
    substream,
    symmetric_drive,
)
from .mtxio import read_matrix, write_matrix
from .rootlog import (
    SqrtOptions,
    StructuredLog,
    coupled_step,
    floquet_hamiltonian,
    log_structured,
    pade_log,
    sqrt_structured,
    sqrt_uncorrected,
)
from .specfact import DiagResult, diag_structured, reconstruct
from .symmetry import (
    ResidualReport,
    SymmetryClass,
    SymmetryContext,
    aiii_index,
    dual,
    enforce_log_symmetry,
    enforce_unitary_symmetry,
    log_residual,
    make_context,
    residual,
    unitarize_step,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousSignature",
    "DiagResult",
    "DimensionMismatch",
    "DriveSpec",
    "GapSpec",
    "MatrixFormatError",
    "MaxIterationsExceeded",
    "NormTooLarge",
    "NotChiral",
    "NotNearlyUnitary",
    "ObstructionDetected",
    "OperationCancelled",
    "ResidualReport",
    "SingularIteration",
    "SingularMatrix",
    "SpectralModel",
    "SqrtOptions",
    "StructuredLog",
    "SymlogError",
    "SymmetryClass",
    "SymmetryContext",
    "UnsupportedClass",
    "aiii_index",
    "aiii_obstructed_unitary",
    "coupled_step",
    "diag_structured",
    "dual",
    "enforce_log_symmetry",
    "enforce_unitary_symmetry",
    "exit_code",
    "floquet_hamiltonian",
    "floquet_operator",
    "gapped_spectral_model",
    "haar_orthogonal",
    "haar_unitary",
    "log_residual",
    "log_structured",
    "make_context",
    "pade_log",
    "random_gapped_unitary",
    "read_matrix",
    "reconstruct",
    "residual",
    "sqrt_structured",
    "sqrt_uncorrected",
    "substream",
    "symmetric_drive",
    "unitarize_step",
    "write_matrix",
    "__version__",
]
