"""Report figures written next to the CSV/JSON outputs."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

FIGSIZE = (8, 4.5)


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_latency(latencies_ms: Sequence[float], path: str | Path, title: str = "Response time") -> Path:
    """Per-query scatter on the left, box plot of the same samples on the right."""
    lat = np.asarray(latencies_ms, dtype=float)
    fig, (ax_scatter, ax_box) = plt.subplots(
        1, 2, figsize=FIGSIZE, gridspec_kw={"width_ratios": [3, 1]}, sharey=True
    )
    ax_scatter.scatter(np.arange(len(lat)), lat, s=4, alpha=0.5, color="tab:blue")
    for q, style in ((99, "--"), (50, ":")):
        if len(lat):
            ax_scatter.axhline(np.percentile(lat, q), color="tab:red", linestyle=style, lw=1, label=f"p{q}")
    ax_scatter.set_xlabel("query")
    ax_scatter.set_ylabel("latency (ms)")
    ax_scatter.set_title(title)
    if len(lat):
        ax_scatter.legend(loc="upper right", frameon=False)
        ax_box.boxplot(lat, showfliers=True)
    ax_box.set_xticks([])
    ax_box.set_title("closer look")
    return _save(fig, path)


def plot_indexing(sizes: Sequence[int], seconds: Sequence[float], path: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.loglog(sizes, seconds, "o-", color="tab:green")
    for n, s in zip(sizes, seconds):
        ax.annotate(f"{s:.2f}s", (n, s), textcoords="offset points", xytext=(4, -12), fontsize=8)
    ax.set_xlabel("records")
    ax.set_ylabel("indexing time (s)")
    ax.set_title("Indexing time")
    ax.grid(True, which="both", alpha=0.3)
    return _save(fig, path)


def plot_metrics(metrics, path: str | Path) -> Path:
    names = ["precision", "recall", f"F{metrics.beta:g}"]
    micro = [metrics.precision, metrics.recall, metrics.f_beta]
    macro = [metrics.macro_precision, metrics.macro_recall, metrics.macro_f_beta]
    x = np.arange(len(names))
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.bar(x - 0.2, micro, 0.4, label="micro")
    ax.bar(x + 0.2, macro, 0.4, label="macro")
    ax.set_xticks(x, names)
    ax.set_ylim(0, 1.05)
    ax.set_title(f"Evaluation (tp={metrics.tp}, fp={metrics.fp}, fn={metrics.fn})")
    ax.legend(frameon=False)
    return _save(fig, path)
