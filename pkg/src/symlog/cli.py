"""Command-line surface: matrix I/O, computational subcommands, benchmark.

Subcommands: sqrt, log, diag, index, gen, bench, check. Matrices travel as
Matrix Market array files. Residual reports are plain ``key value`` lines
written to stderr, or to a file with --report. Exit codes: 0 success, 2
topological obstruction, 3 numerical failure (non-convergence, singular
step), 4 I/O or validation error. Nothing is printed to stdout except
``index K`` from the index subcommand and, with --stdout, result matrices.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import bench, errors, gen, linalg, mtxio, rootlog, specfact, symmetry
from .errors import (
    AmbiguousSignature,
    MaxIterationsExceeded,
    NotChiral,
    NotNearlyUnitary,
    SingularIteration,
    SymlogError,
)
from .symmetry import SymmetryClass

_CLASS_CHOICES = tuple(m.value for m in SymmetryClass)

# Errors the --nudge retry may plausibly repair. Obstructions are excluded
# on purpose: the index is homotopy invariant, so a small perturbation
# cannot remove it, only mask it.
_NUDGE_RETRYABLE = (NotNearlyUnitary, NotChiral, AmbiguousSignature,
                    MaxIterationsExceeded, SingularIteration)


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; 2 means obstruction here."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(4, f"{self.prog}: error: {message}\n")


def _default_seed() -> int:
    raw = os.environ.get("SYMLOG_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"SYMLOG_SEED must be an integer, got {raw!r}") from None


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit_report(args, items) -> None:
    """Write ``key value`` lines to stderr and/or the --report file."""
    text = "".join(f"{key} {_fmt(val)}\n" for key, val in items)
    if args.report:
        with open(args.report, "w", encoding="ascii") as f:
            f.write(text)
    if not args.quiet:
        sys.stderr.write(text)


def _note(args, message: str) -> None:
    if not args.quiet:
        sys.stderr.write(message + "\n")


def _read_input(args) -> np.ndarray:
    u = mtxio.read_matrix(args.input)
    return linalg.as_square(u, "input")


def _write_result(args, path, a) -> None:
    if path is not None:
        mtxio.write_matrix(path, a)
    if getattr(args, "stdout", False):
        mtxio.write_matrix(sys.stdout, a)


def _require_output(args) -> None:
    if args.output is None and not args.stdout:
        raise ValueError("an output path (or --stdout) is required")


def _sym_ctx(args, n):
    sym = SymmetryClass.from_label(getattr(args, "sym", "a"))
    return sym, symmetry.make_context(sym, n)


def _nudged(u, sym, ctx, eps: float) -> np.ndarray:
    """Perturb u by a random direction of spectral norm eps, then repair.

    Three polar Newton steps plus one symmetry projection bring the
    perturbed matrix back to a structured unitary near u. Deterministic:
    the direction comes from a fixed substream of the default seed.
    """
    rng = gen.substream(_default_seed(), 9)
    g = rng.standard_normal(u.shape) + 1j * rng.standard_normal(u.shape)
    g *= eps / linalg.spectral_norm(g)
    v = u + g
    for _ in range(3):
        v = symmetry.unitarize_step(v)
    return symmetry.enforce_unitary_symmetry(v, sym, ctx)


def _with_nudge(args, u, sym, ctx, compute):
    try:
        return compute(u)
    except _NUDGE_RETRYABLE as exc:
        eps = getattr(args, "nudge", None)
        if eps is None:
            raise
        _note(args, f"symlog {args.command}: retrying once after a nudge of "
                    f"size {eps:g} ({type(exc).__name__})")
        return compute(_nudged(u, sym, ctx, eps))


def _unitary_report(u, sym, ctx):
    rep = symmetry.residual(u, sym, ctx)
    return [("unitarity_err", rep.unitarity), ("symmetry_err", rep.symmetry)]


def cmd_sqrt(args) -> int:
    _require_output(args)
    u = _read_input(args)
    sym, ctx = _sym_ctx(args, u.shape[0])
    v = _with_nudge(args, u, sym, ctx, lambda m: rootlog.sqrt_structured(
        m, sym, ctx=ctx, input_tol=args.tol))
    n = u.shape[0]
    _emit_report(args, [
        ("backward_err", linalg.spectral_norm(v @ v - u)),
        ("unitarity_err", linalg.spectral_norm(v.conj().T @ v - np.eye(n))),
        ("symmetry_err", symmetry.residual(v, sym, ctx).symmetry),
    ])
    _write_result(args, args.output, v)
    return 0


def cmd_log(args) -> int:
    _require_output(args)
    u = _read_input(args)
    sym, ctx = _sym_ctx(args, u.shape[0])
    h = _with_nudge(args, u, sym, ctx, lambda m: rootlog.log_structured(
        m, sym, ctx=ctx, input_tol=args.tol)).h_anti
    rep = symmetry.log_residual(h, sym, ctx)
    _emit_report(args, [
        ("backward_err",
         linalg.spectral_norm(linalg.expm_antihermitian(h) - u)),
        ("unitarity_err", rep.unitarity),
        ("symmetry_err", rep.symmetry),
    ])
    _write_result(args, args.output, h)
    return 0


def cmd_diag(args) -> int:
    u = _read_input(args)
    sym, ctx = _sym_ctx(args, u.shape[0])
    res = _with_nudge(args, u, sym, ctx, lambda m: specfact.diag_structured(
        m, sym, ctx=ctx, input_tol=args.tol))
    q = res.q
    lam = np.exp(1j * res.d_phases)
    n = u.shape[0]
    items = [
        ("eigresidual", linalg.spectral_norm(u @ q - q * lam)),
        ("orth_err", linalg.spectral_norm(q.conj().T @ q - np.eye(n))),
    ]
    if sym is SymmetryClass.SYMMETRIC_AI:
        items.append(("realness_err", linalg.spectral_norm(q.imag)))
    elif sym is SymmetryClass.CHIRAL_AIII:
        half = n // 2
        paired = ctx.gamma @ q[:, :half] - q[:, half:]
        items.append(("pairing_err",
                      float(np.linalg.norm(paired, axis=0).max())))
    _emit_report(args, items)
    mtxio.write_matrix(args.qout, q)
    mtxio.write_matrix(args.dout, np.diag(lam))
    return 0


def cmd_index(args) -> int:
    u = _read_input(args)
    sym, ctx = _sym_ctx(args, u.shape[0])
    k = _with_nudge(args, u, sym, ctx, lambda m: symmetry.aiii_index(
        m, ctx=ctx, input_tol=args.tol))
    _emit_report(args, _unitary_report(u, sym, ctx))
    sys.stdout.write(f"index {k}\n")
    return 0


def cmd_check(args) -> int:
    u = _read_input(args)
    sym, ctx = _sym_ctx(args, u.shape[0])
    rep = symmetry.residual(u, sym, ctx)
    items = [("unitarity_err", rep.unitarity), ("symmetry_err", rep.symmetry)]
    if sym is SymmetryClass.CHIRAL_AIII:
        items.append(("index",
                      symmetry.aiii_index(u, ctx=ctx, input_tol=args.tol)))
    _emit_report(args, items)
    if rep.unitarity > args.tol or rep.symmetry > args.tol:
        raise NotNearlyUnitary(
            f"residuals (unitarity {rep.unitarity:.2e}, symmetry "
            f"{rep.symmetry:.2e}) exceed {args.tol:.2e}")
    return 0


def cmd_gen(args) -> int:
    if args.size < 1:
        raise ValueError(f"--size must be >= 1, got {args.size}")
    sym = SymmetryClass.from_label(args.sym)
    seed = args.seed if args.seed is not None else _default_seed()
    spec = gen.GapSpec(gap=args.gap, pinned=args.pinned)
    u = gen.random_gapped_unitary(sym, args.size, spec, seed)
    ctx = symmetry.make_context(sym, args.size)
    _emit_report(args, _unitary_report(u, sym, ctx))
    mtxio.write_matrix(
        args.output, u,
        comment=f"gapped unitary class={sym.value} n={args.size} "
                f"gap={args.gap:g} seed={seed}")
    return 0


def cmd_bench(args) -> int:
    classes = [s for s in args.classes.split(",") if s]
    sizes = [int(s) for s in args.sizes.split(",") if s]
    gaps = [float(s) for s in args.gaps.split(",") if s]
    if not classes or not sizes or not gaps:
        raise ValueError("--classes, --sizes and --gaps must be non-empty")
    seed = args.seed if args.seed is not None else _default_seed()
    progress = None if args.quiet else (
        lambda line: sys.stderr.write(line + "\n"))
    count = bench.run_bench(classes, sizes, gaps, args.trials, seed,
                            args.out, pinned=args.pinned, progress=progress)
    _note(args, f"wrote {count} rows to {args.out}")
    if args.figures is not None:
        from . import figures
        out_dir = args.figures
        if out_dir == "":
            out_dir = os.path.splitext(args.out)[0] + "_figures"
        written = figures.render_figures(args.out, out_dir)
        _note(args, f"wrote {len(written)} figures to {out_dir}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="symlog",
        description="Symmetry-preserving square roots, logarithms and "
                    "diagonalizations of unitary matrices.")
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="{sqrt,log,diag,index,gen,bench,check}")

    def common(sp, *, classes=_CLASS_CHOICES, default_class="a", tol=True):
        sp.add_argument("--class", dest="sym", choices=classes,
                        default=default_class,
                        help="symmetry class of the input "
                             f"(default {default_class})")
        if tol:
            sp.add_argument("--tol", type=float, default=1e-6,
                            help="input validation tolerance (default 1e-6)")
        sp.add_argument("--format", choices=("mtx",), default="mtx",
                        help="matrix file format (only mtx for now)")
        sp.add_argument("--report", metavar="FILE",
                        help="write the residual report to FILE instead of "
                             "stderr")
        sp.add_argument("--quiet", action="store_true",
                        help="suppress the stderr report and progress lines")

    def nudge(sp):
        sp.add_argument("--nudge", type=float, metavar="EPS",
                        help="on validation or convergence failure, retry "
                             "once after perturbing the input by a random "
                             "structured perturbation of spectral norm EPS "
                             "and re-unitarizing (escape hatch for spectra "
                             "touching -1)")

    sp = sub.add_parser("sqrt", help="structured principal square root")
    sp.add_argument("input")
    sp.add_argument("output", nargs="?",
                    help="output path (may be omitted with --stdout)")
    sp.add_argument("--stdout", action="store_true",
                    help="write the result matrix to stdout")
    common(sp)
    nudge(sp)
    sp.set_defaults(func=cmd_sqrt)

    sp = sub.add_parser("log", help="structured principal logarithm "
                                    "(anti-Hermitian)")
    sp.add_argument("input")
    sp.add_argument("output", nargs="?",
                    help="output path (may be omitted with --stdout)")
    sp.add_argument("--stdout", action="store_true",
                    help="write the result matrix to stdout")
    common(sp)
    nudge(sp)
    sp.set_defaults(func=cmd_log)

    sp = sub.add_parser("diag", help="structured spectral factorization")
    sp.add_argument("input")
    sp.add_argument("qout", help="output path for the eigenvector matrix Q")
    sp.add_argument("dout", help="output path for the diagonal eigenvalue "
                                 "matrix D")
    common(sp)
    nudge(sp)
    sp.set_defaults(func=cmd_diag)

    sp = sub.add_parser("index", help="chiral index of a graded unitary")
    sp.add_argument("input")
    common(sp, classes=("aiii",), default_class="aiii")
    nudge(sp)
    sp.set_defaults(func=cmd_index)

    sp = sub.add_parser("check", help="validate a matrix file and report "
                                      "residuals without computing anything")
    sp.add_argument("input")
    common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("gen", help="generate a gapped structured unitary")
    sp.add_argument("output")
    sp.add_argument("--size", type=int, required=True, metavar="N",
                    help="matrix dimension")
    sp.add_argument("--gap", type=float, default=1e-2,
                    help="arc distance of the pinned eigenvalue pair from -1 "
                         "(default 1e-2)")
    sp.add_argument("--pinned", type=int, default=4,
                    help="number of eigenvalues pinned at the gap edge "
                         "(default 4)")
    sp.add_argument("--seed", type=int, default=None,
                    help="RNG seed (default: SYMLOG_SEED or 0)")
    common(sp, tol=False)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("bench", help="benchmark sweep to CSV")
    sp.add_argument("--classes", default="a,ai,aiii",
                    help="comma-separated class labels (default a,ai,aiii)")
    sp.add_argument("--sizes", default="50",
                    help="comma-separated dimensions (default 50)")
    sp.add_argument("--gaps", default="1e-2",
                    help="comma-separated gaps (default 1e-2)")
    sp.add_argument("--trials", type=int, default=1,
                    help="trials per cell (default 1)")
    sp.add_argument("--pinned", type=int, default=4,
                    help="pinned eigenvalues per generated matrix (default 4)")
    sp.add_argument("--seed", type=int, default=None,
                    help="RNG seed (default: SYMLOG_SEED or 0)")
    sp.add_argument("--out", required=True, metavar="CSV",
                    help="output CSV path")
    sp.add_argument("--figures", nargs="?", const="", default=None,
                    metavar="DIR",
                    help="also render per-metric figures, to DIR or to "
                         "'<csv stem>_figures/'")
    sp.add_argument("--quiet", action="store_true",
                    help="suppress progress lines")
    sp.set_defaults(func=cmd_bench, report=None)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SymlogError, OSError, ValueError) as exc:
        sys.stderr.write(f"symlog {args.command}: error: {exc}\n")
        return errors.exit_code(exc)


if __name__ == "__main__":
    sys.exit(main())
