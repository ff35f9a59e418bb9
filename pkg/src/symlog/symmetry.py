"""Symmetry classes of unitary matrices and their enforcement maps.

Four classes are handled:

  GenericA      no constraint beyond unitarity
  SymmetricAI   complex symmetric, U^T = U
  SelfDualAII   self-dual, dual(U) = U with dual(X) = -Z X^T Z
  ChiralAIII    graded, Gamma U Gamma = U^dagger

Conventions are canonical and fixed: Gamma = diag(I, -I) on an even
dimension split in half, Z = [[0, I], [-I, 0]]. Callers with a symmetry in
general position are expected to rotate into this basis first.

Enforcement works by averaging with the symmetry image, which is an exact
projection in floating point: the enforced relation holds entrywise with
equality, not merely to rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import linalg
from .errors import AmbiguousSignature, DimensionMismatch, NotChiral, SingularMatrix


class SymmetryClass(Enum):
    GENERIC_A = "a"
    SYMMETRIC_AI = "ai"
    SELF_DUAL_AII = "aii"
    CHIRAL_AIII = "aiii"

    @classmethod
    def from_label(cls, label: str) -> "SymmetryClass":
        try:
            return cls(label.strip().lower())
        except ValueError:
            valid = ", ".join(m.value for m in cls)
            raise ValueError(
                f"unknown symmetry class {label!r}; expected one of {valid}"
            ) from None


# Classes whose defining relation pairs index j with j + n/2.
_EVEN_ONLY = (SymmetryClass.SELF_DUAL_AII, SymmetryClass.CHIRAL_AIII)


@dataclass(frozen=True)
class SymmetryContext:
    """Fixed matrices realizing a class's involution at dimension n.

    gamma is present for ChiralAIII, zmat for SelfDualAII; both are None
    otherwise. Instances are immutable and shareable.
    """

    n: int
    sym: SymmetryClass
    gamma: np.ndarray | None = None
    zmat: np.ndarray | None = None


def make_context(sym: SymmetryClass, n: int) -> SymmetryContext:
    """Build the context for `sym` at dimension n, validating evenness."""
    if n <= 0:
        raise DimensionMismatch(f"dimension must be positive, got {n}")
    if sym in _EVEN_ONLY and n % 2:
        raise DimensionMismatch(f"class {sym.value} needs even dimension, got {n}")
    gamma = zmat = None
    h = n // 2
    if sym is SymmetryClass.CHIRAL_AIII:
        g = np.ones(n)
        g[h:] = -1.0
        gamma = np.diag(g).astype(np.complex128)
    elif sym is SymmetryClass.SELF_DUAL_AII:
        zmat = np.zeros((n, n), dtype=np.complex128)
        zmat[:h, h:] = np.eye(h)
        zmat[h:, :h] = -np.eye(h)
    return SymmetryContext(n=n, sym=sym, gamma=gamma, zmat=zmat)


def _ctx_for(u: np.ndarray, sym: SymmetryClass, ctx: SymmetryContext | None):
    if ctx is None:
        return make_context(sym, u.shape[0])
    if ctx.n != u.shape[0] or ctx.sym is not sym:
        raise DimensionMismatch("context does not match the input matrix")
    return ctx


@dataclass(frozen=True)
class ResidualReport:
    """Unitarity and class-symmetry defects, both in spectral norm."""

    unitarity: float
    symmetry: float


def dual(x: np.ndarray, ctx: SymmetryContext) -> np.ndarray:
    """The dual -Z x^T Z. An involution and a Frobenius isometry."""
    x = linalg.as_square(x, "x")
    if ctx.zmat is None or ctx.n != x.shape[0]:
        raise DimensionMismatch("dual needs a SelfDualAII context of matching size")
    return -ctx.zmat @ x.T @ ctx.zmat


def residual(u: np.ndarray, sym: SymmetryClass,
             ctx: SymmetryContext | None = None) -> ResidualReport:
    """Measure how far u is from a unitary with the class symmetry."""
    u = linalg.as_square(u, "u")
    ctx = _ctx_for(u, sym, ctx)
    n = u.shape[0]
    unit = linalg.spectral_norm(u.conj().T @ u - np.eye(n))
    if sym is SymmetryClass.GENERIC_A:
        defect = 0.0
    elif sym is SymmetryClass.SYMMETRIC_AI:
        defect = linalg.spectral_norm(u - u.T)
    elif sym is SymmetryClass.SELF_DUAL_AII:
        defect = linalg.spectral_norm(u - dual(u, ctx))
    else:
        g = ctx.gamma
        defect = linalg.spectral_norm(g @ u @ g - u.conj().T)
    return ResidualReport(unitarity=unit, symmetry=defect)


def enforce_unitary_symmetry(u: np.ndarray, sym: SymmetryClass,
                             ctx: SymmetryContext | None = None) -> np.ndarray:
    """Project u onto matrices satisfying the class relation exactly."""
    u = linalg.as_square(u, "u")
    ctx = _ctx_for(u, sym, ctx)
    if sym is SymmetryClass.GENERIC_A:
        return u
    if sym is SymmetryClass.SYMMETRIC_AI:
        return 0.5 * (u + u.T)
    if sym is SymmetryClass.SELF_DUAL_AII:
        return 0.5 * (u + dual(u, ctx))
    g = ctx.gamma
    return 0.5 * (u + g @ u.conj().T @ g)


def enforce_log_symmetry(h: np.ndarray, sym: SymmetryClass,
                         ctx: SymmetryContext | None = None) -> np.ndarray:
    """Project h to an exactly anti-Hermitian matrix with the log symmetry.

    The anti-Hermitian projection (h - h^dagger)/2 comes first, then the
    class projection: symmetric averaging for SymmetricAI (making the result
    i times a real symmetric matrix, with exactly zero real part), self-dual
    averaging for SelfDualAII, and the grading-odd part (h - Gamma h Gamma)/2
    for ChiralAIII. Each later projection preserves the earlier ones exactly.
    """
    h = linalg.as_square(h, "h")
    ctx = _ctx_for(h, sym, ctx)
    h = 0.5 * (h - h.conj().T)
    if sym is SymmetryClass.SYMMETRIC_AI:
        h = 0.5 * (h + h.T)
    elif sym is SymmetryClass.SELF_DUAL_AII:
        h = 0.5 * (h + dual(h, ctx))
    elif sym is SymmetryClass.CHIRAL_AIII:
        g = ctx.gamma
        h = 0.5 * (h - g @ h @ g)
    return h


def log_residual(h: np.ndarray, sym: SymmetryClass,
                 ctx: SymmetryContext | None = None) -> ResidualReport:
    """Measure how far h is from an anti-Hermitian matrix with the log symmetry.

    The unitarity field holds the anti-Hermiticity defect ||h + h^dagger||_2
    (exp(h) is unitary exactly when this is zero); the symmetry field holds
    the defect of the class relation a logarithm inherits: symmetry h = h^T
    for SymmetricAI, self-duality for SelfDualAII, and grading-oddness
    Gamma h Gamma = -h for ChiralAIII.
    """
    h = linalg.as_square(h, "h")
    ctx = _ctx_for(h, sym, ctx)
    anti = linalg.spectral_norm(h + h.conj().T)
    if sym is SymmetryClass.GENERIC_A:
        defect = 0.0
    elif sym is SymmetryClass.SYMMETRIC_AI:
        defect = linalg.spectral_norm(h - h.T)
    elif sym is SymmetryClass.SELF_DUAL_AII:
        defect = linalg.spectral_norm(h - dual(h, ctx))
    else:
        g = ctx.gamma
        defect = linalg.spectral_norm(g @ h @ g + h)
    return ResidualReport(unitarity=anti, symmetry=defect)


def unitarize_step(v: np.ndarray) -> np.ndarray:
    """One Newton step toward the polar (unitary) factor: (v + (v^dagger)^-1)/2.

    Quadratically contracting: a unitarity defect delta below 1/2 becomes
    O(delta^2). Raises SingularMatrix for non-invertible input.
    """
    v = linalg.as_square(v, "v")
    return 0.5 * (v + linalg.inverse(v.conj().T))


def aiii_index(u: np.ndarray, ctx: SymmetryContext | None = None,
               input_tol: float = 1e-6) -> int:
    """Half the signature of U*Gamma, the obstruction to a structured log.

    U*Gamma is Hermitian for an exactly chiral unitary; the index counts
    (positive - negative) eigenvalues of its Hermitianization, halved. It is
    an exact integer, stable under structured conjugation and homotopy, and
    zero precisely when eigenvalue -1 has balanced grading.
    """
    u = linalg.as_square(u, "u")
    ctx = _ctx_for(u, SymmetryClass.CHIRAL_AIII, ctx)
    rep = residual(u, SymmetryClass.CHIRAL_AIII, ctx)
    if rep.unitarity > input_tol or rep.symmetry > input_tol:
        raise NotChiral(
            f"input residuals (unitarity {rep.unitarity:.2e}, "
            f"symmetry {rep.symmetry:.2e}) exceed {input_tol:.2e}"
        )
    k = u @ ctx.gamma
    k = 0.5 * (k + k.conj().T)
    _, e = linalg.eigh(k)
    if np.abs(e).min() < 1e-8:
        raise AmbiguousSignature(
            "an eigenvalue of U*Gamma is within 1e-8 of zero; "
            "the signature cannot be classified reliably"
        )
    sig = int(np.count_nonzero(e > 0)) - int(np.count_nonzero(e < 0))
    return sig // 2


__all__ = [
    "SymmetryClass",
    "SymmetryContext",
    "ResidualReport",
    "make_context",
    "dual",
    "residual",
    "enforce_unitary_symmetry",
    "enforce_log_symmetry",
    "log_residual",
    "unitarize_step",
    "aiii_index",
    "AmbiguousSignature",
    "NotChiral",
    "SingularMatrix",
]
