"""Structured square roots and logarithms of (nearly) unitary matrices.

The square root is a coupled Newton-type iteration

    Y <- (1/3) Y [I + 8 (I + 3 Z Y)^(-1)],   Z <- (1/3) [I + 8 (I + 3 Z Y)^(-1)] Z

started from Y = U, Z = I. On scalars of modulus one the update multiplies by
(3 + zy) / (1 + 3 zy), which maps the unit circle to itself with fixed point 1,
so exact arithmetic would keep every iterate unitary and preserve the class
symmetry. Floating point does not: left uncorrected, the unitarity defect of Y
grows steadily (roughly an order of magnitude every two iterations on
ill-conditioned input). The corrected iteration therefore follows each update
with one Newton polar step, (V + (V^dagger)^(-1))/2, and an exact symmetry
projection on both Y and Z.

The logarithm takes five structured square roots, bringing the spectrum onto
the short arc around 1, evaluates the diagonal Pade approximant of log(1+x) in
partial-fraction form, projects onto exactly anti-Hermitian matrices with the
class symmetry, and undoes the scaling by multiplying with 2^5 (exact, power
of two). The Floquet wrapper divides by the drive period with the convention
exp(-i T H_F) = U, so H_F = (i/T) log U.

A nonzero chiral index blocks both operations for the graded class: eigenvalue
-1 is then topologically pinned, the iteration oscillates instead of
contracting, and no structured logarithm exists. The index is checked up front
and reported as ObstructionDetected.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from . import linalg
from .errors import (
    MaxIterationsExceeded,
    NormTooLarge,
    NotNearlyUnitary,
    ObstructionDetected,
    OperationCancelled,
    SingularIteration,
    SingularMatrix,
)
from .symmetry import (
    SymmetryClass,
    SymmetryContext,
    aiii_index,
    enforce_log_symmetry,
    enforce_unitary_symmetry,
    make_context,
    residual,
    unitarize_step,
)

# Relative change below which the stagnation detector arms itself.
_STAGNATION_FLOOR = 1e-8


@dataclass(frozen=True)
class SqrtOptions:
    """Iteration controls for the square root.

    conv_tol is the relative Frobenius change that counts as converged;
    None resolves to 10 * n * eps at call time. enforce_every gates the
    correction steps (polar and symmetry projection): 1 corrects every
    iteration, larger values correct every so many iterations.
    """

    max_iters: int = 50
    conv_tol: float | None = None
    enforce_every: int = 1

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if self.conv_tol is not None and self.conv_tol <= 0:
            raise ValueError("conv_tol must be positive")
        if self.enforce_every < 1:
            raise ValueError("enforce_every must be at least 1")


@dataclass(frozen=True)
class StructuredLog:
    """Anti-Hermitian logarithm with exp(h_anti) ~ U and the class symmetry."""

    h_anti: np.ndarray
    sym: SymmetryClass


def coupled_step(y: np.ndarray, z: np.ndarray):
    """One uncorrected update of the coupled pair (Y, Z).

    Raises SingularIteration when I + 3ZY fails the pivot test, which
    signals spectrum at or near -1.
    """
    y = linalg.as_square(y, "y")
    z = linalg.as_square(z, "z")
    n = y.shape[0]
    try:
        c = (np.eye(n) + 8.0 * linalg.inverse(np.eye(n) + 3.0 * (z @ y))) / 3.0
    except SingularMatrix as exc:
        raise SingularIteration(
            "I + 3ZY is numerically singular; spectrum at or near -1"
        ) from exc
    return y @ c, c @ z


def _resolve_tol(opts: SqrtOptions, n: int) -> float:
    if opts.conv_tol is not None:
        return opts.conv_tol
    return 10.0 * n * linalg.EPS


def _sqrt_iter(u, sym, ctx, opts, corrected, cancel=None, observer=None):
    """Shared iteration driver. Preconditions are the caller's business."""
    n = u.shape[0]
    tol = _resolve_tol(opts, n)
    y = u.astype(np.complex128, copy=True)
    z = np.eye(n, dtype=np.complex128)
    floor_seen = False
    increases = 0
    prev_change = None
    for k in range(1, opts.max_iters + 1):
        if cancel is not None and cancel():
            raise OperationCancelled(f"cancelled at iteration {k}")
        y0 = y
        try:
            y, z = coupled_step(y, z)
            if corrected and k % opts.enforce_every == 0:
                y = unitarize_step(y)
                z = unitarize_step(z)
                y = enforce_unitary_symmetry(y, sym, ctx)
                z = enforce_unitary_symmetry(z, sym, ctx)
        except SingularMatrix as exc:
            raise SingularIteration(str(exc)) from exc
        if observer is not None:
            observer(k, y, z)
        change = linalg.frobenius_norm(y - y0) / linalg.frobenius_norm(y)
        if change <= tol:
            return y
        # Stagnation: once the change has dipped below the floor, two
        # consecutive increases mean rounding noise, not progress.
        if floor_seen and prev_change is not None and change > prev_change:
            increases += 1
            if increases >= 2:
                return y
        else:
            increases = 0
        if change < _STAGNATION_FLOOR:
            floor_seen = True
        prev_change = change
    raise MaxIterationsExceeded(
        f"no convergence in {opts.max_iters} iterations "
        f"(last relative change {change:.3e}); "
        "spectrum touching -1 makes the iteration oscillate"
    )


def _check_input(u, sym, ctx, input_tol):
    rep = residual(u, sym, ctx)
    if rep.unitarity > input_tol or rep.symmetry > input_tol:
        raise NotNearlyUnitary(
            f"input residuals (unitarity {rep.unitarity:.2e}, "
            f"symmetry {rep.symmetry:.2e}) exceed {input_tol:.2e}"
        )
    if sym is SymmetryClass.CHIRAL_AIII:
        idx = aiii_index(u, ctx, input_tol=input_tol)
        if idx != 0:
            raise ObstructionDetected(
                f"chiral index is {idx}; no structured square root or "
                "logarithm exists for nonzero index"
            )


def sqrt_structured(u: np.ndarray, sym: SymmetryClass,
                    ctx: SymmetryContext | None = None,
                    opts: SqrtOptions | None = None, *,
                    input_tol: float = 1e-6,
                    cancel: Callable[[], bool] | None = None,
                    observer: Callable[[int, np.ndarray, np.ndarray], None] | None = None,
                    ) -> np.ndarray:
    """Principal square root of a nearly unitary matrix, symmetry preserved.

    Parameters
    ----------
    u : ndarray
        Square complex matrix, unitary and class-symmetric to input_tol.
    sym : SymmetryClass
        Symmetry class of u; the output satisfies the same relation exactly
        wherever enforcement applies (AI, AII, AIII).
    ctx : SymmetryContext, optional
        Fixed class matrices; derived from sym and u's size when omitted.
    opts : SqrtOptions, optional
        Iteration controls.
    input_tol : float
        Precondition threshold on the unitarity and symmetry residuals.
    cancel : callable, optional
        Cooperative cancellation token, polled once per iteration.
    observer : callable, optional
        Called as observer(iteration, y, z) after each corrected iteration.

    Returns
    -------
    ndarray
        V with V^2 ~ u, unitary to rounding, spectrum in the closed right
        half-plane.

    Raises
    ------
    NotNearlyUnitary, ObstructionDetected, SingularIteration,
    MaxIterationsExceeded, OperationCancelled
    """
    u = linalg.as_square(u, "u")
    if ctx is None:
        ctx = make_context(sym, u.shape[0])
    opts = opts or SqrtOptions()
    _check_input(u, sym, ctx, input_tol)
    return _sqrt_iter(u, sym, ctx, opts, corrected=True,
                      cancel=cancel, observer=observer)


def sqrt_uncorrected(u: np.ndarray, opts: SqrtOptions | None = None, *,
                     cancel: Callable[[], bool] | None = None,
                     observer: Callable[[int, np.ndarray, np.ndarray], None] | None = None,
                     ) -> np.ndarray:
    """The plain coupled iteration, no polar step, no symmetry projection.

    Kept as a comparison hook: on nearly-but-not-exactly unitary input the
    returned root squares back to u at rounding level while its own
    unitarity defect can be many orders larger. Use sqrt_structured for
    real work.
    """
    u = linalg.as_square(u, "u")
    opts = opts or SqrtOptions()
    return _sqrt_iter(u, SymmetryClass.GENERIC_A, None, opts, corrected=False,
                      cancel=cancel, observer=observer)


@lru_cache(maxsize=8)
def _pade_nodes(order: int):
    """Gauss-Legendre nodes and weights transplanted to [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(order)
    return tuple((x + 1.0) / 2.0), tuple(w / 2.0)


def pade_log(x: np.ndarray, order: int = 7) -> np.ndarray:
    """Diagonal Pade approximant of log(I + x) in partial-fraction form.

    Evaluates r_order(x) = sum_j w_j x (I + t_j x)^(-1) with the order-point
    Gauss-Legendre rule on [0, 1]. The approximation error is bounded by the
    scalar quantity |r(-t) - log(1-t)| at t = ||x||, which is far below
    double rounding for t <= 0.1.
    """
    x = linalg.as_square(x, "x")
    nrm = linalg.spectral_norm(x)
    if nrm >= 0.5:
        raise NormTooLarge(
            f"||x|| = {nrm:.3e} is outside the reliable region (< 0.5)"
        )
    n = x.shape[0]
    nodes, weights = _pade_nodes(order)
    out = np.zeros((n, n), dtype=np.complex128)
    eye = np.eye(n)
    for t, w in zip(nodes, weights):
        out += w * (x @ linalg.inverse(eye + t * x))
    return out


def log_structured(u: np.ndarray, sym: SymmetryClass,
                   ctx: SymmetryContext | None = None,
                   k: int = 5, order: int = 7,
                   opts: SqrtOptions | None = None, *,
                   input_tol: float = 1e-6,
                   cancel: Callable[[], bool] | None = None) -> StructuredLog:
    """Anti-Hermitian principal logarithm with the class symmetry exact.

    Takes k structured square roots (preconditions checked once, on u), maps
    the result through the order-point Pade approximant, projects onto
    exactly anti-Hermitian matrices with the class relation, and scales by
    2^k. Eigenvalues of the result lie in i times the principal interval.
    """
    u = linalg.as_square(u, "u")
    if ctx is None:
        ctx = make_context(sym, u.shape[0])
    opts = opts or SqrtOptions()
    _check_input(u, sym, ctx, input_tol)
    r = u
    for _ in range(k):
        r = _sqrt_iter(r, sym, ctx, opts, corrected=True, cancel=cancel)
    h = pade_log(r - np.eye(r.shape[0]), order)
    h = enforce_log_symmetry(h, sym, ctx)
    h = float(2 ** k) * h
    return StructuredLog(h_anti=h, sym=sym)


def floquet_hamiltonian(u: np.ndarray, period: float, sym: SymmetryClass,
                        ctx: SymmetryContext | None = None,
                        k: int = 5, order: int = 7,
                        opts: SqrtOptions | None = None, *,
                        input_tol: float = 1e-6,
                        cancel: Callable[[], bool] | None = None) -> np.ndarray:
    """Effective Hamiltonian H_F = (i/T) log U with exp(-i T H_F) = U.

    Exactly Hermitian by construction. For the complex-symmetric class the
    logarithm has exactly zero real part, so H_F is real symmetric; the
    imaginary part is verified small and then zeroed outright.
    """
    if period <= 0:
        raise ValueError(f"period must be positive, got {period}")
    log = log_structured(u, sym, ctx, k=k, order=order, opts=opts,
                         input_tol=input_tol, cancel=cancel)
    # 1j * h permutes/negates components exactly; the real scale is symmetric.
    hf = (1j * log.h_anti) * (1.0 / period)
    if sym is SymmetryClass.SYMMETRIC_AI:
        imag_resid = float(np.abs(hf.imag).max())
        if imag_resid > 1e-10:
            raise NotNearlyUnitary(
                f"imaginary residue {imag_resid:.2e} of the symmetric-class "
                "Hamiltonian is too large; input symmetry is likely broken"
            )
        hf = hf.real.astype(np.complex128)
    return hf


__all__ = [
    "SqrtOptions",
    "StructuredLog",
    "coupled_step",
    "sqrt_structured",
    "sqrt_uncorrected",
    "pade_log",
    "log_structured",
    "floquet_hamiltonian",
]
