"""Benchmark sweep comparing the structured solvers against stock dense ones.

For every (class, size, gap, trial) cell the sweep generates a gapped
unitary with a known spectral model, runs the structured square root, log,
and diagonalization, runs the generic library routines on the same input,
and appends one CSV row per measured metric. Metric names in the CSV are
stage-qualified (``sqrt.backward_err``, ``baseline_diag.orth_err``, ...);
the terminal segment is always drawn from the fixed vocabulary declared in
BenchRow. The CSV is append-only and flushed after every row, so a killed
run leaves a valid prefix. Baseline routines are identified by name in
``#`` comment lines before the header.
"""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import errors, gen, linalg, rootlog, specfact, symmetry
from .symmetry import SymmetryClass

CSV_HEADER = ("class", "n", "gap", "trial", "metric", "value")

#: Stage name -> fully qualified name of the stock routine it wraps.
BASELINES = {
    "baseline_sqrt": "scipy.linalg.sqrtm",
    "baseline_log": "scipy.linalg.logm",
    "baseline_diag": "numpy.linalg.eig",
}

#: The fixed metric vocabulary; terminal segments of CSV metric names.
METRIC_NAMES = frozenset({
    "backward_err", "forward_err", "unitarity_err", "symmetry_err",
    "eigresidual", "orth_err", "offcircle_err", "realness_err",
    "pairing_err", "wall_seconds", "error_code",
})


@dataclass(frozen=True)
class BenchRow:
    """One measurement: a metric value for one (class, n, gap, trial) cell."""

    sym: str
    n: int
    gap: float
    trial: int
    metric: str
    value: float

    def __post_init__(self):
        if not math.isfinite(self.value) or self.value < 0.0:
            raise ValueError(f"metric value must be finite and >= 0, "
                             f"got {self.metric}={self.value!r}")
        base = self.metric.rsplit(".", 1)[-1]
        if base not in METRIC_NAMES:
            raise ValueError(f"unknown metric name {self.metric!r}")


def _offcircle(eigenvalues: np.ndarray) -> float:
    return float(np.abs(np.abs(eigenvalues) - 1.0).max())


def _model_sqrt(model: gen.SpectralModel) -> np.ndarray:
    side = model.vectors.conj().T
    return (model.vectors * np.exp(0.5j * model.phases)) @ side


def _model_log(model: gen.SpectralModel) -> np.ndarray:
    side = model.vectors.conj().T
    return (model.vectors * (1j * model.phases)) @ side


def _sqrt_metrics(v, u, sym, ctx, model, dt):
    n = u.shape[0]
    return {
        "backward_err": linalg.spectral_norm(v @ v - u),
        "unitarity_err": linalg.spectral_norm(v.conj().T @ v - np.eye(n)),
        "symmetry_err": symmetry.residual(v, sym, ctx).symmetry,
        "offcircle_err": _offcircle(np.linalg.eigvals(v)),
        "forward_err": linalg.spectral_norm(v - _model_sqrt(model)),
        "wall_seconds": dt,
    }


def _log_metrics(h, u, sym, ctx, model, dt, reconstruct):
    rep = symmetry.log_residual(h, sym, ctx)
    return {
        "backward_err": linalg.spectral_norm(reconstruct(h) - u),
        "unitarity_err": rep.unitarity,
        "symmetry_err": rep.symmetry,
        "forward_err": linalg.spectral_norm(h - _model_log(model)),
        "wall_seconds": dt,
    }


def _diag_metrics(q, eigenvalues, u, sym, dt):
    n = u.shape[0]
    out = {
        "eigresidual": linalg.spectral_norm(u @ q - q * eigenvalues),
        "orth_err": linalg.spectral_norm(q.conj().T @ q - np.eye(n)),
        "offcircle_err": _offcircle(eigenvalues),
        "wall_seconds": dt,
    }
    if sym is SymmetryClass.SYMMETRIC_AI:
        out["realness_err"] = linalg.spectral_norm(q.imag)
    return out


def _stage_sqrt(u, sym, ctx, model):
    t0 = time.perf_counter()
    v = rootlog.sqrt_structured(u, sym, ctx=ctx)
    dt = time.perf_counter() - t0
    return _sqrt_metrics(v, u, sym, ctx, model, dt)


def _stage_baseline_sqrt(u, sym, ctx, model):
    t0 = time.perf_counter()
    v = scipy.linalg.sqrtm(u, disp=False)[0].astype(np.complex128)
    dt = time.perf_counter() - t0
    return _sqrt_metrics(v, u, sym, ctx, model, dt)


def _stage_log(u, sym, ctx, model):
    t0 = time.perf_counter()
    h = rootlog.log_structured(u, sym, ctx=ctx).h_anti
    dt = time.perf_counter() - t0
    return _log_metrics(h, u, sym, ctx, model, dt, linalg.expm_antihermitian)


def _stage_baseline_log(u, sym, ctx, model):
    t0 = time.perf_counter()
    h = scipy.linalg.logm(u, disp=False)[0].astype(np.complex128)
    dt = time.perf_counter() - t0
    return _log_metrics(h, u, sym, ctx, model, dt, scipy.linalg.expm)


def _stage_diag(u, sym, ctx, model):
    t0 = time.perf_counter()
    res = specfact.diag_structured(u, sym, ctx=ctx)
    dt = time.perf_counter() - t0
    out = _diag_metrics(res.q, np.exp(1j * res.d_phases), u, sym, dt)
    if sym is SymmetryClass.CHIRAL_AIII:
        half = u.shape[0] // 2
        paired = ctx.gamma @ res.q[:, :half] - res.q[:, half:]
        out["pairing_err"] = float(np.linalg.norm(paired, axis=0).max())
    return out


def _stage_baseline_diag(u, sym, ctx, model):
    t0 = time.perf_counter()
    w, q = np.linalg.eig(u)
    dt = time.perf_counter() - t0
    # No pairing_err here: an unpaired, arbitrarily ordered eigenbasis has
    # no canonical j <-> j + n/2 matching to measure against.
    return _diag_metrics(q, w, u, sym, dt)


STAGES = (
    ("sqrt", _stage_sqrt),
    ("baseline_sqrt", _stage_baseline_sqrt),
    ("log", _stage_log),
    ("baseline_log", _stage_baseline_log),
    ("diag", _stage_diag),
    ("baseline_diag", _stage_baseline_diag),
)


def _instance_seed(seed: int, block: int, trial: int) -> int:
    # Spawn-key component 3 keeps these streams disjoint from the ones the
    # generator draws internally (0..2).
    return int(gen.substream(seed, 3, block, trial).integers(0, 2 ** 63))


def run_bench(classes, sizes, gaps, trials, seed, out_path, *,
              pinned: int = 4, progress=None) -> int:
    """Run the sweep and append rows to `out_path`. Returns the row count.

    `classes` may hold SymmetryClass members or their labels; `sizes`,
    `gaps` are iterables of int/float; `trials` repeats each cell with
    independent seed substreams derived from `seed`. `progress`, if given,
    is called with a one-line string per (class, n, gap) block. Failures of
    a single stage become ``stage.error_code`` rows instead of aborting.
    """
    syms = [s if isinstance(s, SymmetryClass) else SymmetryClass.from_label(s)
            for s in classes]
    sizes = [int(n) for n in sizes]
    gaps = [float(g) for g in gaps]
    trials = int(trials)
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")

    count = 0
    with open(out_path, "w", encoding="ascii", newline="") as f:
        f.write(f"# symlog bench seed={seed}\n")
        for stage_name in sorted(BASELINES):
            f.write(f"# {stage_name}: {BASELINES[stage_name]}\n")
        f.flush()
        writer = csv.writer(f)
        writer.writerow(CSV_HEADER)
        f.flush()

        def emit(row: BenchRow):
            nonlocal count
            writer.writerow((row.sym, row.n, row.gap, row.trial,
                             row.metric, row.value))
            f.flush()
            count += 1

        block = 0
        for sym in syms:
            for n in sizes:
                for gap in gaps:
                    if progress is not None:
                        progress(f"class={sym.value} n={n} gap={gap:g}")
                    for trial in range(trials):
                        _run_cell(sym, n, gap, trial,
                                  _instance_seed(seed, block, trial),
                                  pinned, emit)
                    block += 1
    return count


def _run_cell(sym, n, gap, trial, inst_seed, pinned, emit):
    label = sym.value

    def fail(stage, exc):
        emit(BenchRow(sym=label, n=n, gap=gap, trial=trial,
                      metric=f"{stage}.error_code",
                      value=float(errors.exit_code(exc))))

    try:
        spec = gen.GapSpec(gap=gap, pinned=pinned)
        model = gen.gapped_spectral_model(sym, n, spec, inst_seed)
        ctx = symmetry.make_context(sym, n)
    except Exception as exc:  # noqa: BLE001 - sweep must keep going
        fail("gen", exc)
        return
    for stage_name, stage in STAGES:
        try:
            metrics = stage(model.u, sym, ctx, model)
        except Exception as exc:  # noqa: BLE001 - sweep must keep going
            fail(stage_name, exc)
            continue
        for name, value in metrics.items():
            emit(BenchRow(sym=label, n=n, gap=gap, trial=trial,
                          metric=f"{stage_name}.{name}", value=float(value)))


__all__ = ["BenchRow", "BASELINES", "METRIC_NAMES", "CSV_HEADER",
           "STAGES", "run_bench"]
