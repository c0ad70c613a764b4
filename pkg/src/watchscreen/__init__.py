"""Approximate watch-list entity extraction from free text."""

from .costs import DEFAULT_SCHEDULE, CostMatrices, ThresholdSchedule
from .engine import Screener, ScreenResult
from .filtering import FilterConfig, filter_matches, support
from .forest import Forest, SearchConfig, build_forest, search_forest
from .index import (
    DictionaryStats,
    Document,
    TrieIndex,
    build_index,
    information,
    lookup_exact,
)
from .ingest import parse_mt, screenable_fields
from .normalize import expand_query, normalize_text
from .ranking import ScoredResult, score_document, similarity, top_k
from .search import Match, MatchSet, search_query, search_token, weighted_edit_distance

__version__ = "0.1.0"

__all__ = [
    "CostMatrices",
    "DEFAULT_SCHEDULE",
    "DictionaryStats",
    "Document",
    "FilterConfig",
    "Forest",
    "Match",
    "MatchSet",
    "ScoredResult",
    "ScreenResult",
    "Screener",
    "SearchConfig",
    "ThresholdSchedule",
    "TrieIndex",
    "build_forest",
    "build_index",
    "expand_query",
    "filter_matches",
    "information",
    "lookup_exact",
    "normalize_text",
    "parse_mt",
    "score_document",
    "screenable_fields",
    "search_forest",
    "search_query",
    "search_token",
    "similarity",
    "support",
    "top_k",
    "weighted_edit_distance",
]
