"""Figures for survey reports."""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .falsifier import SurveyReport  # noqa: E402


def breaking_fraction_grid(report: SurveyReport):
    """Fraction of admissible e with at least one failing message, per (b, v).

    Returns (primes, grid) where grid[i, k] belongs to b = primes[i],
    v = primes[k]; cells with no admissible e are NaN.
    """
    tally = defaultdict(lambda: [0, 0])
    for r in report.rows:
        cell = tally[r.b, r.v]
        cell[0] += r.failure_count > 0
        cell[1] += 1
    primes = sorted({p for pair in tally for p in pair})
    index = {p: i for i, p in enumerate(primes)}
    grid = np.full((len(primes), len(primes)), np.nan)
    for (b, v), (broken, total) in tally.items():
        grid[index[b], index[v]] = broken / total
    return primes, grid


def plot_survey(report: SurveyReport, path: str | Path, dpi: int = 120) -> None:
    primes, grid = breaking_fraction_grid(report)
    scheme = report.rows[0].scheme.value if report.rows else "?"
    size = max(4.0, 0.32 * len(primes) + 2.0)
    fig, ax = plt.subplots(figsize=(size + 1.2, size))
    im = ax.imshow(grid, origin="lower", cmap="magma_r", vmin=0.0, vmax=1.0)
    ax.set_xticks(range(len(primes)), [str(p) for p in primes], rotation=90, fontsize=7)
    ax.set_yticks(range(len(primes)), [str(p) for p in primes], fontsize=7)
    ax.set_xlabel("v")
    ax.set_ylabel("b")
    lo, hi = report.prime_range
    ax.set_title(f"{scheme}: share of admissible e that break, primes in [{lo}, {hi}]", fontsize=9)
    fig.colorbar(im, ax=ax, fraction=0.046, pad=0.04)
    fig.tight_layout()
    # Fixed metadata keeps the PNG byte-stable across runs.
    fig.savefig(path, dpi=dpi, metadata={"Software": None})
    plt.close(fig)
