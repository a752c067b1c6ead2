"""Figures written next to the CSV output of the `search` and `family` commands."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable, Mapping

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from lucas_squares.lucas_core import SolutionRecord  # noqa: E402


def _figure(width: float = 6.0, height: float | None = None):
    golden_ratio = (math.sqrt(5) - 1.0) / 2.0
    height = height or width * golden_ratio
    fig, ax = plt.subplots(figsize=(width, height), facecolor="w")
    ax.tick_params(labelsize=9)
    return fig, ax


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_hits(records: Iterable[SolutionRecord], path: Path, title: str = "") -> Path:
    """Scatter of the (P, Q) pairs with U_n square, one marker colour per n."""
    records = list(records)
    fig, ax = _figure()
    by_n: dict[int, list[SolutionRecord]] = {}
    for r in records:
        by_n.setdefault(r.n, []).append(r)
    for n, recs in sorted(by_n.items()):
        ax.scatter([r.P for r in recs], [r.Q for r in recs], s=28, label=f"n = {n}")
        for r in recs:
            ax.annotate(f"{r.root}²", (r.P, r.Q), fontsize=7, xytext=(3, 3), textcoords="offset points")
    if any(abs(r.Q) > 1000 for r in records):
        ax.set_yscale("symlog")
    ax.axhline(0, color="0.8", lw=0.8)
    ax.set_xlabel("P")
    ax.set_ylabel("Q")
    ax.set_title(title or f"{len(records)} square values U_n(P, Q)", fontsize=10)
    if by_n:
        ax.legend(fontsize=8, frameon=False)
    return _save(fig, path)


def plot_filter_funnel(stats: Mapping[str, int], path: Path) -> Path:
    """Counts at each stage of the search filter, on a log axis."""
    keys = ["values_tested", "negative_values", "sieve_rejections", "exact_tests", "hits"]
    labels = ["tested", "negative", "sieve reject", "isqrt", "hits"]
    values = [max(int(stats.get(k, 0)), 0) for k in keys]
    fig, ax = _figure()
    bars = ax.bar(labels, [max(v, 0.8) for v in values], color="0.35")
    ax.set_yscale("log")
    for bar, v in zip(bars, values):
        ax.annotate(str(v), (bar.get_x() + bar.get_width() / 2, max(v, 0.8)), ha="center", fontsize=8,
                    xytext=(0, 2), textcoords="offset points")
    ax.set_ylabel("count")
    ax.set_title("search filter", fontsize=10)
    return _save(fig, path)
