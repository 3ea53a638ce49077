"""Betti-table heatmaps.  Uses the Agg backend; nothing is shown on screen."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .report import BettiReport  # noqa: E402


def betti_heatmap(report: BettiReport, path: str | Path, title: str | None = None,
                  row_label: str = "p") -> Path:
    """Rows p, columns homological degree (paper orientation); counts annotated."""
    path = Path(path)
    present = report.degrees() or [0]
    degs = list(range(min(present), max(present) + 1))
    ps = list(report.rows) or [0]
    grid = np.zeros((len(ps), len(degs)), dtype=int)
    for i, p in enumerate(ps):
        for j, k in enumerate(degs):
            grid[i, j] = report.rows.get(p, {}).get(k, 0)
    fig, ax = plt.subplots(figsize=(0.55 * len(degs) + 2.2, 0.45 * len(ps) + 1.6))
    top = max(1, int(grid.max()))
    ax.imshow(np.ma.masked_equal(grid, 0), cmap="Blues", aspect="auto", vmin=0, vmax=top * 1.15)
    for i in range(len(ps)):
        for j in range(len(degs)):
            if grid[i, j]:
                ink = "white" if grid[i, j] > 0.6 * top else "black"
                ax.text(j, i, str(grid[i, j]), ha="center", va="center", fontsize=9, color=ink)
    ax.set_xticks(range(len(degs)), [str(k) for k in degs])
    ax.set_yticks(range(len(ps)), [str(p) for p in ps])
    ax.set_xlabel("degree (homological)")
    ax.set_ylabel(row_label)
    ax.set_title(title or f"{report.kind} over {report.field}", fontsize=10)
    for s in ("top", "right"):
        ax.spines[s].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
