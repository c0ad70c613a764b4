"""Deterministic synthetic watch lists and labeled payment queries.

Names are built from syllables with Zipf-skewed token popularity, and
corporate names carry frequent legal-form words, so the corpus has both
rare identifying tokens and noisy ubiquitous ones.  Queries embed a record
with injected typos among payment-narrative distractor words.
"""

from __future__ import annotations

import itertools
import math
import random
import string
from collections import Counter
from typing import List, Optional, Sequence, Tuple

from .costs import DEFAULT_SCHEDULE, ThresholdSchedule
from .evaluation import LabeledQuery
from .index import Document
from .normalize import normalize_text
from .search import weighted_edit_distance

_ONSETS = ["", "b", "c", "d", "f", "g", "h", "j", "k", "l", "m", "n", "p", "r", "s", "t",
           "v", "y", "z", "ch", "sh", "kh", "br", "tr", "st", "gh", "dr"]
_VOWELS = ["a", "e", "i", "o", "u", "a", "e", "ai", "ou", "ia", "ee"]
_CODAS = ["", "", "", "n", "r", "l", "s", "m", "k", "t", "d", "h", "z", "rt", "nd"]

CORPORATE_WORDS = [
    "ltd", "corporation", "bank", "international", "trading", "group", "holdings",
    "company", "limited", "global", "securities", "inc", "industries", "services",
    "llc", "gmbh", "co", "enterprises", "investments", "partners", "shipping",
    "finance", "capital", "resources", "logistics", "energy", "import", "export",
]
DISTRACTORS = [
    "invoice", "payment", "salary", "rent", "transfer", "ref", "order", "goods",
    "fee", "consulting", "shipment", "contract", "loan", "deposit", "receipt",
    "tuition", "medical", "travel", "street", "plaza", "avenue", "madrid", "sent",
    "monthly", "advance", "balance", "settlement", "per", "for", "of",
]
_ACCENTS = {"a": "Á", "e": "É", "i": "Í", "o": "Ö", "u": "Ü", "c": "Ç", "s": "Ş", "n": "Ñ"}


def _syllable_words(rng: random.Random, count: int, min_len: int = 3) -> List[str]:
    words: dict = {}
    while len(words) < count:
        n_syl = rng.choice((1, 2, 2, 2, 3, 3, 4))
        w = "".join(rng.choice(_ONSETS) + rng.choice(_VOWELS) + rng.choice(_CODAS) for _ in range(n_syl))
        if len(w) >= min_len and w not in CORPORATE_WORDS:
            words.setdefault(w, None)
    return list(words)


def _zipf_cum(n: int, exponent: float) -> List[float]:
    return list(itertools.accumulate(1.0 / (r + 1) ** exponent for r in range(n)))


def _render(tokens: Sequence[str], rng: random.Random, accent_rate: float = 0.03) -> str:
    out = []
    for tok in tokens:
        if accent_rate and rng.random() < accent_rate:
            pos = [i for i, ch in enumerate(tok) if ch in _ACCENTS]
            if pos:
                i = rng.choice(pos)
                tok = tok[:i].upper() + _ACCENTS[tok[i]] + tok[i + 1:].upper()
        out.append(tok.upper())
    return " ".join(out)


def _support_counts(token_sets: Sequence[frozenset]) -> List[int]:
    """Number of records whose token set contains each record's token set."""
    keys = set(token_sets)
    counts: Counter = Counter()
    for ts in token_sets:
        items = sorted(ts)
        for r in range(1, len(items) + 1):
            for sub in itertools.combinations(items, r):
                sub = frozenset(sub)
                if sub in keys:
                    counts[sub] += 1
    return [counts[ts] for ts in token_sets]


def synth_documents(n_docs: int, seed: int = 0, start_id: int = 1, max_support: int = 20) -> List[Document]:
    """``n_docs`` name-like records (about two thirds individuals, one third companies).

    A record whose whole token set is shared by more than ``max_support``
    records could never survive support filtering, so it gets one extra
    distinguishing token, the way a real list adds a middle name or place.
    """
    rng = random.Random(seed)
    n_given = max(200, n_docs // 40)
    n_surname = max(1000, n_docs // 4)
    vocab = _syllable_words(rng, n_given + n_surname)
    given, surnames = vocab[:n_given], vocab[n_given:]
    given_cum = _zipf_cum(n_given, 1.0)
    surname_cum = _zipf_cum(n_surname, 0.6)
    corp_cum = _zipf_cum(len(CORPORATE_WORDS), 1.1)

    names = []
    for _ in range(n_docs):
        if rng.random() < 0.65:
            k_given = 2 if rng.random() < 0.3 else 1
            k_sur = 2 if rng.random() < 0.2 else 1
            tokens = rng.choices(given, cum_weights=given_cum, k=k_given)
            tokens += rng.choices(surnames, cum_weights=surname_cum, k=k_sur)
        else:
            k_stem = 2 if rng.random() < 0.3 else 1
            k_corp = 2 if rng.random() < 0.4 else 1
            tokens = rng.choices(surnames, cum_weights=surname_cum, k=k_stem)
            tokens += rng.choices(CORPORATE_WORDS, cum_weights=corp_cum, k=k_corp)
        names.append(tokens)

    supports = _support_counts([frozenset(t) for t in names])
    crowded = [i for i, n in enumerate(supports) if n > max_support]
    if crowded:
        taken = set(vocab)
        extra = [w for w in _syllable_words(rng, len(crowded) + len(taken), min_len=6) if w not in taken]
        for i, word in zip(crowded, extra):
            names[i].insert(-1, word)

    docs = []
    for i, tokens in enumerate(names):
        raw = _render(tokens, rng)
        docs.append(Document(start_id + i, raw, tuple(normalize_text(raw))))
    return docs


def edit_budget(token: str, schedule: ThresholdSchedule = DEFAULT_SCHEDULE) -> int:
    return int(math.floor(schedule(len(token)) + 1e-12))


def _edit_once(tok: str, rng: random.Random) -> str:
    letters = string.ascii_lowercase
    op = rng.choice(("sub", "ins", "del") if len(tok) > 1 else ("sub", "ins"))
    if op == "sub":
        i = rng.randrange(len(tok))
        ch = rng.choice([c for c in letters if c != tok[i]])
        return tok[:i] + ch + tok[i + 1:]
    if op == "ins":
        i = rng.randrange(len(tok) + 1)
        return tok[:i] + rng.choice(letters) + tok[i:]
    i = rng.randrange(len(tok))
    return tok[:i] + tok[i + 1:]


def typo(token: str, rng: random.Random, schedule: ThresholdSchedule = DEFAULT_SCHEDULE) -> str:
    """Apply between one and ``edit_budget`` random edits (none for exact-only tokens)."""
    budget = edit_budget(token, schedule)
    if budget < 1:
        return token
    out = token
    for _ in range(rng.randint(1, budget)):
        out = _edit_once(out, rng)
    return out


def typo_beyond(token: str, rng: random.Random, schedule: ThresholdSchedule = DEFAULT_SCHEDULE) -> str:
    """A variant whose edit distance to ``token`` exceeds the threshold for the pair."""
    for attempt in range(100):
        out = token
        for _ in range(edit_budget(token, schedule) + 1 + attempt // 10):
            out = _edit_once(out, rng)
        if weighted_edit_distance(out, token) > schedule(max(len(out), len(token))):
            return out
    raise RuntimeError(f"could not push {token!r} past its edit budget")


def _query_for(doc: Document, rng: random.Random, typo_rate: float, beyond: bool,
               schedule: ThresholdSchedule, n_before: int, n_after: int) -> str:
    tokens = []
    for tok in doc.tokens:
        if beyond:
            tokens.append(typo_beyond(tok, rng, schedule))
        elif rng.random() < typo_rate:
            tokens.append(typo(tok, rng, schedule))
        else:
            tokens.append(tok)
    before = rng.choices(DISTRACTORS, k=n_before)
    after = rng.choices(DISTRACTORS, k=n_after)
    return " ".join(w.upper() for w in before + tokens + after)


def synth_corpus(
    n_docs: int,
    typo_rate: float,
    seed: int = 0,
    n_queries: Optional[int] = None,
    negative_rate: float = 0.1,
    beyond_budget: bool = False,
    schedule: ThresholdSchedule = DEFAULT_SCHEDULE,
) -> Tuple[List[Document], List[LabeledQuery]]:
    """Reference list plus labeled queries embedding sampled records.

    With ``beyond_budget`` every embedded token is edited past its
    threshold, so those queries can only yield false negatives.
    """
    docs = synth_documents(n_docs, seed)
    rng = random.Random(seed + 1)
    n_queries = min(n_docs, n_queries if n_queries is not None else max(1, n_docs // 10))
    labels = []
    for doc in rng.sample(docs, n_queries):
        text = _query_for(doc, rng, typo_rate, beyond_budget, schedule, rng.randint(0, 3), rng.randint(0, 3))
        labels.append(LabeledQuery(text, frozenset({doc.doc_id})))
        if negative_rate and rng.random() < negative_rate:
            text = " ".join(w.upper() for w in rng.choices(DISTRACTORS, k=rng.randint(2, 6)))
            labels.append(LabeledQuery(text, frozenset()))
    return docs, labels


def bench_queries(
    documents: Sequence[Document],
    n_queries: int,
    n_tokens: int = 5,
    seed: int = 0,
    typo_rate: float = 0.3,
    schedule: ThresholdSchedule = DEFAULT_SCHEDULE,
) -> List[str]:
    """Queries of exactly ``n_tokens`` tokens: a typo'd record padded with distractors."""
    rng = random.Random(seed)
    queries = []
    for doc in rng.choices(list(documents), k=n_queries):
        core = [typo(t, rng, schedule) if rng.random() < typo_rate else t for t in doc.tokens][:n_tokens]
        pad = n_tokens - len(core)
        n_before = rng.randint(0, pad)
        words = rng.choices(DISTRACTORS, k=n_before) + core + rng.choices(DISTRACTORS, k=pad - n_before)
        queries.append(" ".join(w.upper() for w in words))
    return queries
