"""End-to-end screening: payload in, ranked watch-list hits out."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence

from .forest import Forest, SearchConfig, build_forest, search_forest
from .index import Document, read_reference_list
from .ingest import DEFAULT_TAGS, screenable_text
from .normalize import expand_query, normalize_text
from .ranking import ScoredResult

SNAPSHOT_HEADER = "# watchscreen snapshot v1"


@dataclass
class ScreenResult:
    query: str
    results: List[ScoredResult]
    latency_ms: float

    def to_dict(self) -> dict:
        return {"query": self.query, "results": [r.to_dict() for r in self.results]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)


class Screener:
    """Immutable screening pipeline over a loaded forest."""

    def __init__(self, forest: Forest, config: Optional[SearchConfig] = None, tags: Sequence[str] = DEFAULT_TAGS):
        self.forest = forest
        self.config = config or SearchConfig()
        self.tags = tuple(tags)

    @classmethod
    def from_documents(cls, documents: Sequence[Document], n_shards: int = 1,
                       config: Optional[SearchConfig] = None) -> "Screener":
        return cls(build_forest(documents, n_shards), config)

    def search(self, text: str, config: Optional[SearchConfig] = None) -> List[ScoredResult]:
        cfg = config or self.config
        expanded = expand_query(normalize_text(text), cfg.window_limit)
        return search_forest(self.forest, expanded, cfg)

    def screen(self, payload: str, fmt: str = "text", config: Optional[SearchConfig] = None) -> ScreenResult:
        t0 = time.perf_counter()
        text = screenable_text(payload, fmt, self.tags)
        results = self.search(text, config)
        return ScreenResult(text, results, (time.perf_counter() - t0) * 1000.0)


def save_snapshot(documents: Sequence[Document], path: str | Path, n_shards: int = 1) -> None:
    """Flat snapshot: the reference list plus a header; tries are rebuilt at load."""
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(f"{SNAPSHOT_HEADER}\n# shards={n_shards}\n")
        for doc in documents:
            fh.write(f"{doc.doc_id}\t{doc.raw_name}\n")
    tmp.replace(path)


def snapshot_shards(path: str | Path) -> Optional[int]:
    with open(path, encoding="utf-8") as fh:
        if fh.readline().rstrip("\n") != SNAPSHOT_HEADER:
            return None
        line = fh.readline().strip()
    if line.startswith("# shards="):
        return int(line.split("=", 1)[1])
    return None


def load_documents(path: str | Path) -> List[Document]:
    return read_reference_list(path)

