"""Dense complex linear-algebra primitives shared by every other module.

Thin wrappers around LAPACK (through numpy and scipy) that pin down the
conventions the rest of the package relies on: square double-precision
complex matrices, finiteness checks, an explicit singularity threshold for
inversion, and a phase-fixed QR whose R factor has a real positive diagonal.
"""

from __future__ import annotations

import warnings

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, SingularMatrix

EPS = float(np.finfo(np.float64).eps)


def as_square(a, name: str = "matrix") -> np.ndarray:
    """Validate and return `a` as a square complex double array."""
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DimensionMismatch(f"{name} contains non-finite entries")
    return a


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product of two equally sized square matrices."""
    a = as_square(a, "a")
    b = as_square(b, "b")
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape mismatch: {a.shape} vs {b.shape}")
    return a @ b


def inverse(a: np.ndarray) -> np.ndarray:
    """Inverse via LU with a pivot-underflow guard.

    Raises SingularMatrix when any pivot falls below n * eps * ||a||_F,
    instead of silently amplifying rounding noise.
    """
    a = as_square(a)
    n = a.shape[0]
    with warnings.catch_warnings():
        # A zero pivot is reported as SingularMatrix below; the factorization
        # warning for the same condition would be redundant.
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    thresh = n * EPS * frobenius_norm(a)
    if np.abs(np.diagonal(lu)).min() <= thresh:
        raise SingularMatrix(
            f"pivot below threshold {thresh:.3e}; matrix is numerically singular"
        )
    return scipy.linalg.lu_solve((lu, piv), np.eye(n, dtype=np.complex128),
                                 check_finite=False)


def eigh(h: np.ndarray, tol_herm: float = 1e-10):
    """Eigendecomposition of a Hermitian matrix.

    Returns (q, e) with h ~ q diag(e) q^dagger and e ascending. The input
    must be Hermitian to within tol_herm relative Frobenius defect; it is
    symmetrized before the backend call.
    """
    h = as_square(h, "h")
    scale = frobenius_norm(h)
    if scale > 0 and frobenius_norm(h - h.conj().T) > tol_herm * scale:
        raise DimensionMismatch("input is not Hermitian to the required tolerance")
    e, q = np.linalg.eigh(0.5 * (h + h.conj().T))
    return q, e


def svd(a: np.ndarray):
    """Full SVD. Returns (u, s, v) with a ~ u diag(s) v^dagger, s descending."""
    a = as_square(a)
    u, s, vh = np.linalg.svd(a)
    return u, s, vh.conj().T


def qr_unitary(a: np.ndarray) -> np.ndarray:
    """Unitary Q from a = QR with R's diagonal made real positive.

    Phases of R's diagonal are absorbed into Q's columns, which makes the
    map well defined and turns QR of a Ginibre sample into a Haar unitary.
    """
    a = as_square(a)
    n = a.shape[0]
    q, r = np.linalg.qr(a)
    d = np.diagonal(r)
    if np.abs(d).min() < n * EPS * frobenius_norm(a):
        raise SingularMatrix("matrix is numerically rank deficient")
    return q * (d / np.abs(d))


def spectral_norm(a: np.ndarray) -> float:
    """Largest singular value."""
    a = as_square(a)
    return float(np.linalg.svd(a, compute_uv=False)[0])


def frobenius_norm(a: np.ndarray) -> float:
    """Root of the sum of squared entry moduli."""
    return float(np.linalg.norm(np.asarray(a)))


def expm_antihermitian(h: np.ndarray) -> np.ndarray:
    """exp(h) for anti-Hermitian h, computed spectrally.

    Diagonalizes the Hermitian matrix -i h and exponentiates the (real)
    eigenvalues, so the result is unitary to rounding. Used for residual
    reporting; acceptance-level verification carries its own copy of this
    construction so the check stays independent of library code.
    """
    h = as_square(h, "h")
    q, e = eigh(-1j * h)
    return (q * np.exp(1j * e)) @ q.conj().T
