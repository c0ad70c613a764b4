"""Set-level noise removal before ranking.

A match set is dropped when it rests on a single ubiquitous record token
(DocFreq > k) or when the combination of its record tokens is itself
common (Support > k).  Sets with Support <= k are kept even if every token
in them is frequent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Mapping

import numpy as np

from .index import Postings, TrieIndex
from .search import MatchSet


@dataclass(frozen=True)
class FilterConfig:
    k: int = 20
    sigma: float = 60.0

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k}")
        if not 0.0 <= self.sigma <= 100.0:
            raise ValueError(f"sigma must be within [0, 100], got {self.sigma}")


def _postings(source: TrieIndex | Postings) -> Postings:
    return source.postings if isinstance(source, TrieIndex) else source


def support_of(postings: Postings, tokens: Iterable[str]) -> int:
    lists = sorted((postings.get(t) for t in set(tokens)), key=len)
    if not lists:
        return 0
    common = lists[0]
    for other in lists[1:]:
        if not len(common):
            break
        common = np.intersect1d(common, other, assume_unique=True)
    return int(len(common))


def support(index: TrieIndex | Postings, match_set: MatchSet) -> int:
    """Number of documents holding every record token of the match set."""
    return support_of(_postings(index), match_set.record_tokens())


def keep(postings: Postings, match_set: MatchSet, k: int) -> bool:
    tokens = match_set.record_tokens()
    if len(tokens) == 1:
        return postings.doc_freq(tokens[0]) <= k
    return support_of(postings, tokens) <= k


def filter_matches(
    candidates: Mapping[int, MatchSet],
    index: TrieIndex | Postings,
    cfg: FilterConfig,
) -> Dict[int, MatchSet]:
    postings = _postings(index)
    return {doc_id: ms for doc_id, ms in candidates.items() if keep(postings, ms, cfg.k)}
