"""Approximate token lookup by trie traversal with weighted edit distance."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, MutableMapping, Tuple

import numpy as np

from . import _kernel
from .costs import DEFAULT_SCHEDULE, UNIT_COSTS, CostMatrices, ThresholdSchedule
from .index import NULL_CODE, TrieIndex, encode
from .normalize import ExpandedQuery


@dataclass(frozen=True)
class Match:
    query_token: str
    record_token: str
    cost: float


@dataclass
class MatchSet:
    doc_id: int
    matches: List[Match] = field(default_factory=list)

    def record_tokens(self) -> List[str]:
        return list(dict.fromkeys(m.record_token for m in self.matches))


def weighted_edit_distance(a: str, b: str, costs: CostMatrices = UNIT_COSTS) -> float:
    """Cheapest edit of query token ``a`` into record token ``b``.

    Dropping ``a[i]`` costs ``duc(a[i-1], a[i])``, adding ``b[j]`` costs
    ``iuc(b[j-1], b[j])`` and reading ``b[j]`` for ``a[i]`` costs
    ``suc(a[i], b[j])`` (0 when the letters agree).  The first letter of a
    token has no predecessor and pays full price.
    """
    n, m = len(a), len(b)
    prev = [0.0] * (m + 1)
    for j in range(1, m + 1):
        prev[j] = prev[j - 1] + costs.iuc(b[j - 2] if j > 1 else None, b[j - 1])
    for i in range(1, n + 1):
        qa = a[i - 1]
        drop = costs.duc(a[i - 2] if i > 1 else None, qa)
        cur = [prev[0] + drop] + [0.0] * m
        for j in range(1, m + 1):
            rb = b[j - 1]
            sub = prev[j - 1] + (0.0 if qa == rb else costs.suc(qa, rb))
            add = cur[j - 1] + costs.iuc(b[j - 2] if j > 1 else None, rb)
            cur[j] = min(sub, prev[j] + drop, add)
        prev = cur
    return prev[m]


def _segments(thr: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Runs of equal threshold over record lengths 1..len(thr)-1."""
    lo, hi, val = [], [], []
    for length in range(1, len(thr)):
        if val and thr[length] == val[-1]:
            hi[-1] = length
        else:
            lo.append(length)
            hi.append(length)
            val.append(thr[length])
    return (np.asarray(lo, dtype=np.int64), np.asarray(hi, dtype=np.int64),
            np.asarray(val, dtype=np.float64))


def token_hits(
    index: TrieIndex,
    query_token: str,
    costs: CostMatrices = UNIT_COSTS,
    schedule: ThresholdSchedule = DEFAULT_SCHEDULE,
) -> Tuple[np.ndarray, np.ndarray]:
    """Record token ids within threshold of ``query_token`` and their costs."""
    if not query_token or index.n_nodes <= 1:
        return np.empty(0, dtype=np.int32), np.empty(0, dtype=np.float64)
    thr = schedule.for_query(len(query_token), max(index.max_depth, len(query_token)))
    lo, hi, val = _segments(thr)
    return _kernel.traverse(
        index.letters, index.depth, index.end, index.token, index.maxbelow,
        index.max_depth, NULL_CODE, encode(query_token),
        costs.iuc_table, costs.duc_table, costs.suc_table,
        thr, lo, hi, val, costs.min_indel,
    )


def search_token(
    index: TrieIndex,
    query_token: str,
    costs: CostMatrices,
    schedule: ThresholdSchedule,
    accumulator: MutableMapping[int, MatchSet],
) -> None:
    tids, dists = token_hits(index, query_token, costs, schedule)
    vocab = index.postings.vocab
    for tid, cost in zip(tids.tolist(), dists.tolist()):
        match = Match(query_token, vocab[tid], cost)
        for doc_id in index.postings.by_id(tid).tolist():
            ms = accumulator.get(doc_id)
            if ms is None:
                ms = accumulator[doc_id] = MatchSet(doc_id)
            ms.matches.append(match)


def _better(candidate: Match, current: Match) -> bool:
    # Lower cost wins; on a tie the longer pair wins since it yields the
    # higher similarity.  Earlier query tokens win remaining ties.
    if candidate.cost != current.cost:
        return candidate.cost < current.cost
    return max(len(candidate.query_token), len(candidate.record_token)) > max(
        len(current.query_token), len(current.record_token)
    )


def best_hits(
    index: TrieIndex,
    expanded: ExpandedQuery,
    costs: CostMatrices = UNIT_COSTS,
    schedule: ThresholdSchedule = DEFAULT_SCHEDULE,
) -> Dict[int, Match]:
    """Best match per record token id over every base and window token."""
    best: Dict[int, Match] = {}
    vocab = index.postings.vocab
    for qtok in expanded.search_tokens():
        tids, dists = token_hits(index, qtok, costs, schedule)
        for tid, cost in zip(tids.tolist(), dists.tolist()):
            match = Match(qtok, vocab[tid], cost)
            current = best.get(tid)
            if current is None or _better(match, current):
                best[tid] = match
    return best


def search_query(
    index: TrieIndex,
    expanded: ExpandedQuery,
    costs: CostMatrices = UNIT_COSTS,
    schedule: ThresholdSchedule = DEFAULT_SCHEDULE,
) -> Dict[int, MatchSet]:
    """Match sets per document, keeping the cheapest match per record token."""
    result: Dict[int, MatchSet] = {}
    for tid, match in sorted(best_hits(index, expanded, costs, schedule).items()):
        for doc_id in index.postings.by_id(tid).tolist():
            ms = result.get(doc_id)
            if ms is None:
                ms = result[doc_id] = MatchSet(doc_id)
            ms.matches.append(match)
    return dict(sorted(result.items()))
