"""Render per-metric summary figures from a benchmark CSV.

One PNG per metric, spectral gap on the x axis, metric value on the y
axis, both log scaled, one curve per (class, n) series with the median
taken over trials. Exact zeros are clamped to 5e-20 so they stay visible
on the log axis. Import is kept out of the bench module so that plain
sweeps never touch matplotlib.
"""

from __future__ import annotations

import csv
import os
from collections import defaultdict
from statistics import median

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402 - backend must be pinned first

from .errors import MatrixFormatError

#: Plotting floor for exact zeros on the log axis.
ZERO_FLOOR = 5e-20


def load_rows(csv_path):
    """Read bench CSV rows as (class, n, gap, trial, metric, value) tuples."""
    rows = []
    with open(csv_path, "r", encoding="ascii", newline="") as f:
        for parts in csv.reader(f):
            if not parts or parts[0].lstrip().startswith("#"):
                continue
            if parts[0] == "class":
                continue
            if len(parts) != 6:
                raise MatrixFormatError(f"malformed bench row: {parts!r}")
            cls, n, gap, trial, metric, value = parts
            rows.append((cls, int(n), float(gap), int(trial),
                         metric, float(value)))
    return rows


def render_figures(csv_path, out_dir) -> list:
    """Render one figure per metric found in `csv_path` into `out_dir`.

    Returns the list of written file paths, sorted. ``error_code`` rows are
    skipped; they are bookkeeping, not measurements.
    """
    by_metric = defaultdict(lambda: defaultdict(lambda: defaultdict(list)))
    for cls, n, gap, _trial, metric, value in load_rows(csv_path):
        if metric.endswith("error_code"):
            continue
        by_metric[metric][(cls, n)][gap].append(value)

    os.makedirs(out_dir, exist_ok=True)
    written = []
    for metric in sorted(by_metric):
        fig, ax = plt.subplots(figsize=(6.4, 4.8))
        for cls, n in sorted(by_metric[metric]):
            series = by_metric[metric][(cls, n)]
            gaps = sorted(series)
            vals = [max(median(series[g]), ZERO_FLOOR) for g in gaps]
            ax.plot(gaps, vals, marker="o", label=f"{cls} n={n}")
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("spectral gap")
        ax.set_ylabel(metric)
        ax.set_title(metric)
        ax.grid(True, which="both", alpha=0.3)
        ax.legend(fontsize=8)
        fig.tight_layout()
        path = os.path.join(out_dir, metric.replace(".", "_") + ".png")
        fig.savefig(path, dpi=120)
        plt.close(fig)
        written.append(path)
    return sorted(written)


__all__ = ["ZERO_FLOOR", "load_rows", "render_figures"]
