"""Sharded trie forest with scatter/gather top-k.

Every shard holds a trie over its own documents, but filtering and scoring
always use corpus-wide statistics and posting lists kept by the forest.  A
document's score and its fate in the filter therefore never depend on how
the dictionary was split, and the merged top-k equals the unsharded one.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence

import numpy as np

from .costs import DEFAULT_SCHEDULE, UNIT_COSTS, CostMatrices, ThresholdSchedule
from .filtering import FilterConfig, support_of
from .index import (
    DictionaryStats,
    Document,
    IndexBuildError,
    Postings,
    TrieIndex,
    check_unique_ids,
    paused_gc,
)
from .normalize import ExpandedQuery
from .ranking import ScoredResult, rank_key, score_document, top_k
from .search import Match, MatchSet, best_hits


@dataclass(frozen=True)
class SearchConfig:
    filter: FilterConfig = field(default_factory=FilterConfig)
    costs: CostMatrices = UNIT_COSTS
    schedule: ThresholdSchedule = DEFAULT_SCHEDULE
    window_limit: int = 4
    weighted: Optional[bool] = None

    @property
    def use_weighted(self) -> bool:
        """Weighted similarity by default only when a non-trivial cost matrix is loaded."""
        if self.weighted is not None:
            return self.weighted
        return not self.costs.is_uniform

    def override(self, k: Optional[int] = None, sigma: Optional[float] = None,
                 weighted: Optional[bool] = None) -> "SearchConfig":
        flt = FilterConfig(
            k=self.filter.k if k is None else k,
            sigma=self.filter.sigma if sigma is None else sigma,
        )
        return replace(self, filter=flt, weighted=self.weighted if weighted is None else weighted)


@dataclass(frozen=True)
class ShardPlan:
    n_shards: int
    assignment: Dict[int, int]

    @classmethod
    def round_robin(cls, doc_ids: Sequence[int], n_shards: int) -> "ShardPlan":
        return cls(n_shards, {d: i % n_shards for i, d in enumerate(sorted(doc_ids))})

    def sizes(self) -> List[int]:
        counts = [0] * self.n_shards
        for shard in self.assignment.values():
            counts[shard] += 1
        return counts


class Forest:
    def __init__(self, shards: List[TrieIndex], postings: Postings, stats: DictionaryStats, plan: ShardPlan):
        self.shards = shards
        self.postings = postings
        self.stats = stats
        self.plan = plan
        self._pool: Optional[ThreadPoolExecutor] = None
        if len(shards) > 1:
            workers = min(len(shards), os.cpu_count() or 1)
            self._pool = ThreadPoolExecutor(max_workers=workers, thread_name_prefix="shard")

    @property
    def n_shards(self) -> int:
        return len(self.shards)

    @property
    def n_docs(self) -> int:
        return self.stats.n_docs

    @property
    def n_tokens(self) -> int:
        return len(self.postings)

    @property
    def n_nodes(self) -> int:
        return sum(s.n_nodes for s in self.shards)

    def close(self) -> None:
        if self._pool is not None:
            self._pool.shutdown(wait=False)
            self._pool = None


def build_forest(documents: Sequence[Document], n_shards: int = 1) -> Forest:
    if n_shards < 1:
        raise IndexBuildError("n_shards must be >= 1")
    if not documents:
        raise IndexBuildError("no documents")
    if n_shards > len(documents):
        raise IndexBuildError(f"{n_shards} shards requested for {len(documents)} documents")
    check_unique_ids(documents)
    with paused_gc():
        postings = Postings.from_documents(documents)
        stats = DictionaryStats.from_postings(documents, postings)
        plan = ShardPlan.round_robin([d.doc_id for d in documents], n_shards)
        if n_shards == 1:
            shards = [TrieIndex(postings)]
        else:
            groups: List[List[Document]] = [[] for _ in range(n_shards)]
            for doc in documents:
                groups[plan.assignment[doc.doc_id]].append(doc)
            shards = [TrieIndex(Postings.from_documents(g)) for g in groups]
    return Forest(shards, postings, stats, plan)


def _bits(row: np.ndarray) -> List[int]:
    out = []
    for w, word in enumerate(row.tolist()):
        while word:
            low = word & -word
            out.append(w * 64 + low.bit_length() - 1)
            word ^= low
    return out


def shard_search(shard: TrieIndex, forest: Forest, expanded: ExpandedQuery, cfg: SearchConfig) -> List[ScoredResult]:
    """Search, filter and score on one shard; returns the shard's local top-k."""
    hits = best_hits(shard, expanded, cfg.costs, cfg.schedule)
    if not hits:
        return []
    tids = sorted(hits)
    matches: List[Match] = [hits[t] for t in tids]
    lists = [shard.postings.by_id(t) for t in tids]
    sizes = np.fromiter((len(x) for x in lists), dtype=np.int64, count=len(lists))
    docs = np.concatenate(lists)
    tok = np.repeat(np.arange(len(tids), dtype=np.int64), sizes)

    # Per-document bitmask of matched record tokens; documents sharing a mask
    # share a match-token set and hence a support value.
    order = np.argsort(docs, kind="stable")
    docs = docs[order]
    tok = tok[order]
    starts = np.flatnonzero(np.concatenate(([True], docs[1:] != docs[:-1])))
    doc_ids = docs[starts]
    n_words = (len(tids) + 63) // 64
    sig = np.zeros((len(doc_ids), n_words), dtype=np.uint64)
    word = tok // 64
    shifted = np.left_shift(np.uint64(1), (tok % 64).astype(np.uint64))
    for w in range(n_words):
        bits = np.where(word == w, shifted, np.uint64(0))
        sig[:, w] = np.bitwise_or.reduceat(bits, starts)
    unique_sig, inverse = np.unique(sig, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)

    k = cfg.filter.k
    sig_tokens = [_bits(row) for row in unique_sig]
    kept = np.array(
        [support_of(forest.postings, [matches[i].record_token for i in idx]) <= k for idx in sig_tokens],
        dtype=bool,
    )
    keep_rows = np.flatnonzero(kept[inverse])

    stats = forest.stats
    weighted = cfg.use_weighted
    scored = []
    for row in keep_rows.tolist():
        doc_id = int(doc_ids[row])
        ms = MatchSet(doc_id, [matches[i] for i in sig_tokens[inverse[row]]])
        scored.append(score_document(stats.documents[doc_id], ms, stats, weighted))
    return top_k(scored, cfg.filter)


def merge(partials: Sequence[List[ScoredResult]], cfg: FilterConfig) -> List[ScoredResult]:
    merged = [r for part in partials for r in part]
    merged.sort(key=rank_key)
    return merged[: cfg.k]


def search_forest(forest: Forest, expanded: ExpandedQuery, cfg: SearchConfig) -> List[ScoredResult]:
    if not expanded.base:
        return []
    if forest._pool is None:
        partials = [shard_search(s, forest, expanded, cfg) for s in forest.shards]
    else:
        futures = [forest._pool.submit(shard_search, s, forest, expanded, cfg) for s in forest.shards]
        partials = [f.result() for f in futures]
    return merge(partials, cfg.filter)
