"""Structured diagonalization of unitary matrices.

A unitary with a well-behaved structured logarithm is diagonalized through
that logarithm: U = exp(i H) with H Hermitian, so any orthonormal eigenbasis
of H diagonalizes U, and H's class structure picks the right solver. Real
symmetric H (the complex-symmetric class) gets a real eigensolver and hence a
real orthogonal basis; grading-odd Hermitian H consists of one off-diagonal
block A, and an SVD of that block yields an eigenbasis in exact grading
pairs. Eigenvalues are carried as real phases, so they sit on the unit circle
by construction instead of drifting off it the way generic eigensolver output
does on clustered spectra.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import UnsupportedClass
from .rootlog import SqrtOptions, log_structured
from .symmetry import SymmetryClass, SymmetryContext, make_context


@dataclass(frozen=True)
class DiagResult:
    """Eigenvector matrix q and eigenphases with u ~ q diag(e^{i phases}) q†.

    Phases lie in the principal interval. For the complex-symmetric class q
    is real; for the graded class columns come in pairs, Gamma q_j equal to
    q_{j + n/2} with opposite phases.
    """

    q: np.ndarray
    d_phases: np.ndarray
    sym: SymmetryClass


def diag_structured(u: np.ndarray, sym: SymmetryClass,
                    ctx: SymmetryContext | None = None,
                    opts: SqrtOptions | None = None, *,
                    input_tol: float = 1e-6) -> DiagResult:
    """Diagonalize a nearly unitary matrix with a class-appropriate solver.

    Routes through the structured logarithm, so the preconditions (near
    unitarity, class symmetry, zero chiral index for the graded class) and
    error behavior are those of log_structured. The self-dual class is
    rejected: existence of a paired basis is known but no algorithm is
    provided here.
    """
    if sym is SymmetryClass.SELF_DUAL_AII:
        raise UnsupportedClass(
            "no structured diagonalization for the self-dual class"
        )
    u = linalg.as_square(u, "u")
    n = u.shape[0]
    if ctx is None:
        ctx = make_context(sym, n)
    log = log_structured(u, sym, ctx, opts=opts, input_tol=input_tol)
    h = -1j * log.h_anti            # Hermitian, exactly
    if sym is SymmetryClass.SYMMETRIC_AI:
        # h is real symmetric with exactly zero imaginary part; the real
        # eigensolver returns an exactly real orthogonal basis.
        phases, q = np.linalg.eigh(h.real)
        return DiagResult(q=q.astype(np.complex128), d_phases=phases, sym=sym)
    if sym is SymmetryClass.CHIRAL_AIII:
        return _diag_graded(h, n, sym)
    q, phases = linalg.eigh(h)
    return DiagResult(q=q, d_phases=phases, sym=sym)


def _diag_graded(h: np.ndarray, n: int, sym: SymmetryClass) -> DiagResult:
    """Eigenbasis of a grading-odd Hermitian h from the SVD of its corner.

    With h = [[0, A], [A†, 0]] and A = U_s diag(s) V_s†, the columns

        q_j       = (u_j, -v_j) / sqrt(2)    phase -s_j
        q_{j+n/2} = (u_j,  v_j) / sqrt(2)    phase +s_j

    are orthonormal eigenvectors of h in exact grading pairs: Gamma q_j
    equals q_{j+n/2} entry for entry, and the phases negate each other.
    """
    half = n // 2
    a = h[:half, half:]
    us, s, vh = np.linalg.svd(a)
    vs = vh.conj().T
    rt = 1.0 / np.sqrt(2.0)
    q = np.empty((n, n), dtype=np.complex128)
    q[:half, :half] = rt * us
    q[:half, half:] = rt * us
    q[half:, :half] = -rt * vs
    q[half:, half:] = rt * vs
    phases = np.concatenate([-s, s])
    return DiagResult(q=q, d_phases=phases, sym=sym)


def reconstruct(res: DiagResult) -> np.ndarray:
    """Assemble q diag(e^{i phases}) q† back into a unitary matrix."""
    return (res.q * np.exp(1j * res.d_phases)) @ res.q.conj().T


__all__ = ["DiagResult", "diag_structured", "reconstruct"]
