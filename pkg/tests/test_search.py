import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from watchscreen.costs import DEFAULT_SCHEDULE, CostMatrices, ThresholdSchedule
from watchscreen.index import Document, build_index
from watchscreen.normalize import expand_query, normalize_text
from watchscreen.search import (
    search_query,
    search_token,
    token_hits,
    weighted_edit_distance,
)

from .oracles import (
    brute_force_hits,
    edit_graph_distance,
    random_costs,
    random_instance,
    wagner_fischer,
)

HOSEIN_COSTS = CostMatrices(insertion={("s", "s"): 0.2}, substitution={("o", "u"): 0.2})


@pytest.mark.parametrize(
    "a, b, expected",
    [
        ("oya", "oya", 0),
        ("hussain", "hussein", 1),
        ("hosein", "hussein", 2),
        ("budur", "budak", 2),
        ("ozdemir", "ozden", 3),
        ("", "abc", 3),
        ("abc", "", 3),
    ],
)
def test_unit_cost_examples(a, b, expected):
    assert weighted_edit_distance(a, b) == expected
    assert wagner_fischer(a, b) == expected


def test_weighted_hosein():
    assert weighted_edit_distance("hosein", "hussein", HOSEIN_COSTS) == pytest.approx(0.4, abs=1e-12)


def test_costs_are_directional():
    c = CostMatrices(substitution={("o", "u"): 0.2})
    assert weighted_edit_distance("o", "u", c) == pytest.approx(0.2)
    assert weighted_edit_distance("u", "o", c) == 1.0


def test_row_zero_uses_deletion_costs():
    c = CostMatrices(deletion={("a", "b"): 0.25})
    assert weighted_edit_distance("ab", "", c) == pytest.approx(1.25)


words = st.text(alphabet="abcz", max_size=9)


@given(words, words)
def test_unit_costs_reduce_to_levenshtein(a, b):
    assert weighted_edit_distance(a, b) == wagner_fischer(a, b)


@settings(max_examples=300)
@given(words, words, st.integers(0, 2**32))
def test_weighted_matches_edit_graph_shortest_path(a, b, seed):
    costs = random_costs(random.Random(seed), "abcz")
    assert weighted_edit_distance(a, b, costs) == pytest.approx(edit_graph_distance(a, b, costs), abs=1e-12)


@given(words, words, st.integers(0, 2**32))
def test_weighted_dominated_by_levenshtein(a, b, seed):
    costs = random_costs(random.Random(seed), "abcz")
    assert weighted_edit_distance(a, b, costs) <= wagner_fischer(a, b) + 1e-12


def _hits(index, query, costs=CostMatrices(), schedule=DEFAULT_SCHEDULE):
    acc = {}
    search_token(index, query, costs, schedule, acc)
    return {(m.record_token, m.cost, doc) for doc, ms in acc.items() for m in ms.matches}


def test_search_token_budur(sample_index):
    index, _ = sample_index
    assert _hits(index, "budur") == {("budur", 0, 2), ("budur", 0, 3), ("budur", 0, 4)}
    loose = ThresholdSchedule(((3, 0), (6, 2), (999, 3)))
    assert ("budak", 2, 5) in _hits(index, "budur", schedule=loose)


def test_search_token_ozdemir(sample_index):
    index, _ = sample_index
    assert _hits(index, "ozdemir") == {("ozdemir", 0, 1)}
    # ozden is three edits from ozdemir, so the length-7 budget must reach 3
    two = ThresholdSchedule(((3, 0), (6, 1), (10, 2)))
    three = ThresholdSchedule(((3, 0), (6, 1), (10, 3)))
    assert ("ozden", 3, 6) not in _hits(index, "ozdemir", schedule=two)
    assert ("ozden", 3, 6) in _hits(index, "ozdemir", schedule=three)


def test_search_token_no_match(sample_index):
    index, _ = sample_index
    acc = {}
    search_token(index, "qqqq", CostMatrices(), DEFAULT_SCHEDULE, acc)
    assert acc == {}


def test_threshold_growing_with_record_length_is_not_pruned():
    # "abc" allows 0 edits but a 4-letter record allows 1; "abdc" sits under
    # the prefix "abd" whose row minimum already exceeds the query's budget.
    index, _ = build_index([Document(1, "", ("abdc",)), Document(2, "", ("abc",))])
    schedule = ThresholdSchedule(((3, 0), (6, 1)))
    assert _hits(index, "abc", schedule=schedule) == {("abc", 0, 2), ("abdc", 1, 1)}


def _oracle_check(rng):
    vocab, query, costs, schedule = random_instance(rng)
    index, _ = build_index([Document(i, "", (t,)) for i, t in enumerate(vocab)])
    tids, dists = token_hits(index, query, costs, schedule)
    got = {index.postings.vocab[t]: d for t, d in zip(tids.tolist(), dists.tolist())}
    return got, brute_force_hits(vocab, query, costs, schedule)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_traversal_equals_brute_force(seed):
    got, expected = _oracle_check(random.Random(seed))
    assert got == expected


def test_search_query_window_token(sample_docs):
    index, _ = build_index([Document.from_name(1, "NETHERLANDS COMPANY"), Document.from_name(2, "LANDS END")])
    found = search_query(index, expand_query(normalize_text("nether lands company")))
    matches = {m.record_token: m for m in found[1].matches}
    assert matches["netherlands"].query_token == "netherlands"
    assert matches["netherlands"].cost == 0
    assert matches["company"].cost == 0


def test_search_query_empty(sample_index):
    index, _ = sample_index
    assert search_query(index, expand_query([])) == {}


def test_search_query_full_name(sample_index):
    index, _ = sample_index
    found = search_query(index, expand_query(normalize_text("OYA CIMEN BUDUR")))
    assert sorted((m.record_token, m.cost) for m in found[3].matches) == [("budur", 0), ("cimen", 0), ("oya", 0)]


def test_search_query_keeps_cheapest_match_per_record_token(sample_index):
    index, _ = sample_index
    found = search_query(index, expand_query(normalize_text("hussain hussein")))
    # each record token is claimed once, by its exact query token
    assert {(m.query_token, m.record_token, m.cost) for m in found[5].matches} == {("hussain", "hussain", 0)}
    assert {(m.query_token, m.record_token, m.cost) for m in found[6].matches} == {("hussein", "hussein", 0)}
    for ms in found.values():
        pairs = [(m.query_token, m.record_token) for m in ms.matches]
        assert len(pairs) == len(set(pairs))
        assert len({m.record_token for m in ms.matches}) == len(ms.matches)
