"""Latency and indexing-time measurement."""

from __future__ import annotations

import csv
import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Sequence, Tuple

import numpy as np

from .engine import Screener
from .forest import build_forest
from .index import Document, paused_gc


@dataclass
class BenchReport:
    n_queries: int
    repetitions: int
    rows: List[Tuple[int, int, float, int]] = field(default_factory=list)  # rep, query, ms, hits

    @property
    def latencies(self) -> np.ndarray:
        return np.array([r[2] for r in self.rows], dtype=float)

    def summary(self) -> dict:
        lat = self.latencies
        return {
            "queries": self.n_queries,
            "repetitions": self.repetitions,
            "samples": int(len(lat)),
            "mean_ms": float(lat.mean()),
            "p50_ms": float(np.percentile(lat, 50)),
            "p95_ms": float(np.percentile(lat, 95)),
            "p99_ms": float(np.percentile(lat, 99)),
            "max_ms": float(lat.max()),
        }


def run_bench(screener: Screener, queries: Sequence[str], repetitions: int = 1,
              fmt: str = "text", warmup: int = 5) -> BenchReport:
    """Replay ``queries`` in order ``repetitions`` times, timing each screen call."""
    if not queries:
        raise ValueError("no queries to benchmark")
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    for q in queries[:warmup]:
        screener.screen(q, fmt)
    report = BenchReport(len(queries), repetitions)
    for rep in range(repetitions):
        for i, q in enumerate(queries):
            res = screener.screen(q, fmt)
            report.rows.append((rep, i, res.latency_ms, len(res.results)))
    return report


def write_bench(report: BenchReport, out_dir: str | Path) -> dict:
    from .plotting import plot_latency

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "latency.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["repetition", "query", "latency_ms", "results"])
        for rep, i, ms, hits in report.rows:
            w.writerow([rep, i, f"{ms:.4f}", hits])
    summary = report.summary()
    (out / "latency.json").write_text(json.dumps(summary, indent=2) + "\n")
    plot_latency(report.latencies, out / "latency.png")
    return summary


def time_indexing(documents_by_size: Sequence[Sequence[Tuple[int, str]]], repeats: int = 1) -> List[float]:
    """Best-of-``repeats`` seconds to normalize and index each (id, name) list."""
    times = []
    for pairs in documents_by_size:
        best = math.inf
        for _ in range(repeats):
            t0 = time.perf_counter()
            with paused_gc():
                docs = [Document.from_name(i, name) for i, name in pairs]
            build_forest(docs, 1)
            best = min(best, time.perf_counter() - t0)
        times.append(best)
    return times


def loglog_slope(sizes: Sequence[int], seconds: Sequence[float]) -> float:
    """Least-squares slope of log(seconds) against log(size)."""
    return float(np.polyfit(np.log(sizes), np.log(seconds), 1)[0])
