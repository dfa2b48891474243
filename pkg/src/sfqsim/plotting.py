"""Rendering of experiment tables to SVG line charts via matplotlib.

Charts are conveniences for eyeballing results; the CSV tables remain the
source of truth. The SVG backend is configured for stable output (fixed hash
salt, no embedded date).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

plt.rcParams["svg.hashsalt"] = "sfqsim"


@dataclass(frozen=True)
class ChartSpec:
    """What to draw from an experiment's column table."""

    x: str
    ys: tuple[str, ...]
    xlabel: str
    ylabel: str
    title: str
    xscale: str = "linear"
    yscale: str = "linear"
    labels: tuple[str, ...] = field(default=())


def render_chart(path: Path, columns: dict, spec: ChartSpec) -> None:
    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    x = columns[spec.x]
    labels = spec.labels if spec.labels else spec.ys
    for name, label in zip(spec.ys, labels):
        y = columns[name]
        marker = "o" if len(x) <= 40 else None
        ax.plot(x, y, label=label, linewidth=1.2, marker=marker, markersize=3)
    ax.set_xscale(spec.xscale)
    ax.set_yscale(spec.yscale)
    ax.set_xlabel(spec.xlabel)
    ax.set_ylabel(spec.ylabel)
    ax.set_title(spec.title)
    if len(spec.ys) > 1:
        ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
