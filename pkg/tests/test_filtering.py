import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from watchscreen.filtering import FilterConfig, filter_matches, support
from watchscreen.index import Document, build_index
from watchscreen.normalize import expand_query, normalize_text
from watchscreen.search import Match, MatchSet, search_query


def _ms(doc_id, *tokens):
    return MatchSet(doc_id, [Match(t, t, 0.0) for t in tokens])


def test_support_on_sample(sample_index):
    index, _ = sample_index
    assert support(index, _ms(2, "budur")) == 3
    assert support(index, _ms(2, "budur", "ozdemir")) == 0
    assert support(index, _ms(2, "ahmet", "budur")) == 1


@pytest.mark.parametrize("k, sigma", [(0, 60), (-1, 60), (20, -1), (20, 100.5)])
def test_filter_config_bounds(k, sigma):
    with pytest.raises(ValueError):
        FilterConfig(k, sigma)


@pytest.fixture(scope="module")
def corporate_index():
    # 30 records carry "corporation"; 25 of them also carry "global"
    names = [f"GLOBAL CORPORATION {w}" for w in ("alpha beta gamma delta epsilon zeta eta theta iota kappa "
                                                  "lambda mu nu xi omicron pi rho sigma tau upsilon phi chi "
                                                  "psi omega securities").split()]
    names += [f"CORPORATION NUMBER{i}" for i in range(5)]
    names += ["ACME TRADING"]
    docs = [Document.from_name(i, n) for i, n in enumerate(names)]
    return build_index(docs), {d.raw_name: d.doc_id for d in docs}


def _run(index, query, k=20):
    return filter_matches(search_query(index, expand_query(normalize_text(query))), index, FilterConfig(k, 0))


def test_ubiquitous_single_token_dropped(corporate_index):
    (index, _), _ = corporate_index
    assert index.postings.doc_freq("corporation") == 30
    assert _run(index, "PAYMENT CORPORATION") == {}


def test_frequent_itemset_dropped(corporate_index):
    (index, _), _ = corporate_index
    assert _run(index, "GLOBAL CORPORATION") == {}


def test_unique_full_match_kept(corporate_index):
    (index, _), ids = corporate_index
    kept = _run(index, "GLOBAL CORPORATION SECURITIES")
    target = ids["GLOBAL CORPORATION securities"]
    assert target in kept
    assert support(index, kept[target]) == 1


def test_boundary_support_equal_to_k_is_kept(corporate_index):
    (index, _), _ = corporate_index
    assert len(_run(index, "GLOBAL CORPORATION", k=25)) == 25
    assert _run(index, "GLOBAL CORPORATION", k=24) == {}


def _random_candidates(seed):
    rng = random.Random(seed)
    vocab = [f"w{i}" for i in range(12)]
    docs = [Document(i, "", tuple(rng.sample(vocab, rng.randint(1, 4)))) for i in range(60)]
    index, _ = build_index(docs)
    candidates = {}
    for d in docs:
        if rng.random() < 0.6:
            chosen = rng.sample(d.tokens, rng.randint(1, len(d.tokens)))
            candidates[d.doc_id] = _ms(d.doc_id, *chosen)
    return index, candidates


@given(st.integers(0, 10**6), st.integers(1, 40), st.integers(0, 40))
def test_filter_is_subset_and_monotone_in_k(seed, k, extra):
    index, candidates = _random_candidates(seed)
    small = filter_matches(candidates, index, FilterConfig(k, 0))
    large = filter_matches(candidates, index, FilterConfig(k + extra, 0))
    assert set(small) <= set(candidates)
    assert all(small[d] is candidates[d] for d in small)
    assert set(small) <= set(large)
    for doc_id, ms in candidates.items():
        tokens = ms.record_tokens()
        rare = any(index.postings.doc_freq(t) <= k for t in tokens)
        if rare and support(index, ms) <= k:
            assert doc_id in small
