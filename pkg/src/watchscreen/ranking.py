"""Percentage scoring of match sets and top-k selection."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, NamedTuple, Optional

from .costs import UNIT_COSTS
from .filtering import FilterConfig
from .index import DictionaryStats, Document
from .search import MatchSet, weighted_edit_distance


class ScoredMatch(NamedTuple):
    query_token: str
    record_token: str
    cost: float
    similarity: float


@dataclass
class ScoredResult:
    doc_id: int
    raw_name: str
    score: float
    matches: List[ScoredMatch] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "name": self.raw_name,
            "score": round(self.score, 4),
            "matches": [
                {"q": m.query_token, "d": m.record_token, "cost": round(m.cost, 4), "sim": round(m.similarity, 4)}
                for m in self.matches
            ],
        }


def similarity(query_token: str, record_token: str, cost: float) -> float:
    longest = max(len(query_token), len(record_token))
    if longest == 0:
        return 1.0
    return max(0.0, 1.0 - cost / longest)


def score_document(
    doc: Document,
    match_set: MatchSet,
    stats: DictionaryStats,
    weighted: bool = True,
) -> ScoredResult:
    """Score = 100 * sum(sim * I) over matched document tokens / sum(I) over all.

    Each distinct document token contributes at most once, through its best
    match, so the score stays within [0, 100].  Unweighted scoring recomputes
    the plain Levenshtein distance of the matched pair.
    """
    best: Dict[str, ScoredMatch] = {}
    for m in match_set.matches:
        cost = m.cost if weighted else weighted_edit_distance(m.query_token, m.record_token, UNIT_COSTS)
        sm = ScoredMatch(m.query_token, m.record_token, cost, similarity(m.query_token, m.record_token, cost))
        current = best.get(m.record_token)
        if current is None or sm.similarity > current.similarity:
            best[m.record_token] = sm

    total = 0.0
    matched = 0.0
    ordered = []
    for tok, info in stats.token_information(doc.doc_id):
        total += info
        sm = best.get(tok)
        if sm is not None:
            matched += sm.similarity * info
            ordered.append(sm)
    if len(ordered) != len(best):
        unknown = sorted(set(best) - {m.record_token for m in ordered})
        raise ValueError(f"record tokens {unknown} are not in document {doc.doc_id}")
    score = 100.0 * matched / total if total > 0 else 0.0
    return ScoredResult(doc.doc_id, doc.raw_name, min(100.0, max(0.0, score)), ordered)


def rank_key(result: ScoredResult):
    return (-result.score, result.doc_id)


def top_k(scored: Iterable[ScoredResult], cfg: FilterConfig) -> List[ScoredResult]:
    kept = [r for r in scored if r.score >= cfg.sigma]
    kept.sort(key=rank_key)
    return kept[: cfg.k]


def score_all(
    candidates: Dict[int, MatchSet],
    stats: DictionaryStats,
    weighted: bool = True,
    cfg: Optional[FilterConfig] = None,
) -> List[ScoredResult]:
    scored = [score_document(stats.documents[d], ms, stats, weighted) for d, ms in candidates.items()]
    return top_k(scored, cfg) if cfg is not None else scored

