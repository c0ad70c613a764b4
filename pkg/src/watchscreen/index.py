"""In-memory trie over dictionary tokens, posting lists and corpus statistics.

The trie is stored flattened in preorder: node ``i``'s subtree occupies the
contiguous range ``[i, end[i])`` and its first child, if any, is ``i + 1``.
A depth-first traversal is then a forward scan that jumps to ``end[i]`` to
skip a pruned subtree.  Children are ordered by letter.
"""

from __future__ import annotations

import gc
import math
import re
from collections import Counter
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .normalize import ALPHABET, normalize_text

NULL_CODE = len(ALPHABET)
LETTER_CODE = {ch: i for i, ch in enumerate(ALPHABET)}
_VALID_TOKEN = re.compile(r"[a-z0-9]+")


@contextmanager
def paused_gc():
    """Suspend the cyclic collector while allocating millions of acyclic objects."""
    enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if enabled:
            gc.enable()


class IndexBuildError(ValueError):
    pass


class ReferenceFormatError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Document:
    doc_id: int
    raw_name: str
    tokens: Tuple[str, ...]

    @classmethod
    def from_name(cls, doc_id: int, raw_name: str) -> "Document":
        return cls(int(doc_id), raw_name, tuple(normalize_text(raw_name)))


def encode(token: str) -> np.ndarray:
    return np.fromiter((LETTER_CODE[c] for c in token), dtype=np.uint8, count=len(token))


class Postings:
    """Sorted, duplicate-free document lists per token (CSR layout)."""

    def __init__(self, vocab: List[str], offsets: np.ndarray, doc_ids: np.ndarray):
        self.vocab = vocab
        self.token_ids = {tok: i for i, tok in enumerate(vocab)}
        self.offsets = offsets
        self.doc_ids = doc_ids

    @classmethod
    def from_documents(cls, documents: Sequence[Document]) -> "Postings":
        lists: Dict[str, List[int]] = {}
        for doc in sorted(documents, key=lambda d: d.doc_id):
            for tok in dict.fromkeys(doc.tokens):
                lst = lists.get(tok)
                if lst is None:
                    lists[tok] = [doc.doc_id]
                else:
                    lst.append(doc.doc_id)
        vocab = sorted(lists)
        sizes = np.fromiter((len(lists[t]) for t in vocab), dtype=np.int64, count=len(vocab))
        offsets = np.zeros(len(vocab) + 1, dtype=np.int64)
        np.cumsum(sizes, out=offsets[1:])
        doc_ids = np.empty(int(offsets[-1]), dtype=np.int64)
        for i, tok in enumerate(vocab):
            doc_ids[offsets[i]:offsets[i + 1]] = lists[tok]
        return cls(vocab, offsets, doc_ids)

    def __len__(self) -> int:
        return len(self.vocab)

    def __contains__(self, token: str) -> bool:
        return token in self.token_ids

    def by_id(self, token_id: int) -> np.ndarray:
        return self.doc_ids[self.offsets[token_id]:self.offsets[token_id + 1]]

    def get(self, token: str) -> np.ndarray:
        tid = self.token_ids.get(token)
        if tid is None:
            return self.doc_ids[:0]
        return self.by_id(tid)

    def doc_freq(self, token: str) -> int:
        tid = self.token_ids.get(token)
        if tid is None:
            return 0
        return int(self.offsets[tid + 1] - self.offsets[tid])


class DictionaryStats:
    """N, document frequencies and term frequencies over a document set.

    ``information(doc_id, token)`` is TF x IDF with IDF = ln(1 + N / df),
    which stays strictly positive even for a token present in every document.
    """

    def __init__(self, documents: Dict[int, Document], doc_freq: Dict[str, int]):
        self.documents = documents
        self.doc_freq = doc_freq
        self.n_docs = len(documents)

    @classmethod
    def from_postings(cls, documents: Sequence[Document], postings: Postings) -> "DictionaryStats":
        sizes = np.diff(postings.offsets).tolist()
        return cls({d.doc_id: d for d in documents}, dict(zip(postings.vocab, sizes)))

    def term_freq(self, doc_id: int, token: str) -> int:
        return self.documents[doc_id].tokens.count(token)

    def idf(self, token: str) -> float:
        return math.log1p(self.n_docs / self.doc_freq[token])

    def information(self, doc_id: int, token: str) -> float:
        doc = self.documents.get(doc_id)
        if doc is None:
            raise KeyError(f"unknown document {doc_id}")
        tf = doc.tokens.count(token)
        if tf == 0:
            raise KeyError(f"token {token!r} not in document {doc_id}")
        return tf * self.idf(token)

    def token_information(self, doc_id: int) -> List[Tuple[str, float]]:
        """(token, I) for each distinct token of the document, in document order."""
        counts = Counter(self.documents[doc_id].tokens)
        return [(tok, tf * self.idf(tok)) for tok, tf in counts.items()]


def information(stats: DictionaryStats, doc_id: int, token: str) -> float:
    return stats.information(doc_id, token)


class TrieIndex:
    def __init__(self, postings: Postings):
        self.postings = postings
        self._build_nodes(postings.vocab)

    def _build_nodes(self, vocab: List[str]) -> None:
        letters = [NULL_CODE]
        depth = [0]
        parent = [-1]
        token = [-1]
        path = [0]
        prev = ""
        for tid, tok in enumerate(vocab):
            if not _VALID_TOKEN.fullmatch(tok):
                raise IndexBuildError(f"token {tok!r} has characters outside [a-z0-9]")
            lcp = 0
            for a, b in zip(prev, tok):
                if a != b:
                    break
                lcp += 1
            del path[lcp + 1:]
            for d in range(lcp + 1, len(tok) + 1):
                idx = len(letters)
                letters.append(LETTER_CODE[tok[d - 1]])
                depth.append(d)
                parent.append(path[d - 1])
                token.append(-1)
                path.append(idx)
            token[path[len(tok)]] = tid
            prev = tok

        n = len(letters)
        self.letters = np.asarray(letters, dtype=np.uint8)
        self.depth = np.asarray(depth, dtype=np.int32)
        self.parent = np.asarray(parent, dtype=np.int32)
        self.token = np.asarray(token, dtype=np.int32)

        # Preorder: a node's subtree ends where the next node at the same or
        # a shallower depth begins.
        end = np.full(n, n, dtype=np.int32)
        stack: List[int] = []
        for i, d in enumerate(depth):
            while stack and depth[stack[-1]] >= d:
                end[stack.pop()] = i
            stack.append(i)
        self.end = end

        maxbelow = np.where(self.token >= 0, self.depth, 0).astype(np.int32)
        for i in range(n - 1, 0, -1):
            p = parent[i]
            if maxbelow[i] > maxbelow[p]:
                maxbelow[p] = maxbelow[i]
        self.maxbelow = maxbelow
        self.max_depth = int(self.depth.max()) if n else 0

    @property
    def n_nodes(self) -> int:
        return len(self.letters)

    @property
    def n_tokens(self) -> int:
        return len(self.postings)

    @property
    def root(self) -> "TrieNode":
        return TrieNode(self, 0)

    def children(self, node: int) -> Iterator[int]:
        child = node + 1
        stop = self.end[node]
        while child < stop:
            yield child
            child = int(self.end[child])

    def node_token(self, node: int) -> Optional[str]:
        tid = self.token[node]
        return self.postings.vocab[tid] if tid >= 0 else None


class TrieNode:
    """Read-only view of one node of a :class:`TrieIndex`."""

    __slots__ = ("_index", "node")

    def __init__(self, index: TrieIndex, node: int):
        self._index = index
        self.node = node

    @property
    def letter(self) -> Optional[str]:
        code = self._index.letters[self.node]
        return None if code == NULL_CODE else ALPHABET[code]

    @property
    def eow(self) -> bool:
        return bool(self._index.token[self.node] >= 0)

    @property
    def postings(self) -> List[int]:
        tid = self._index.token[self.node]
        return self._index.postings.by_id(tid).tolist() if tid >= 0 else []

    @property
    def children(self) -> Dict[str, "TrieNode"]:
        return {
            ALPHABET[self._index.letters[c]]: TrieNode(self._index, c)
            for c in self._index.children(self.node)
        }

    def __repr__(self) -> str:
        return f"TrieNode(letter={self.letter!r}, eow={self.eow}, children={len(self.children)})"


def build_index(documents: Sequence[Document]) -> Tuple[TrieIndex, DictionaryStats]:
    if not documents:
        raise IndexBuildError("no documents")
    check_unique_ids(documents)
    postings = Postings.from_documents(documents)
    return TrieIndex(postings), DictionaryStats.from_postings(documents, postings)


def check_unique_ids(documents: Iterable[Document]) -> None:
    seen = set()
    for doc in documents:
        if doc.doc_id < 0:
            raise IndexBuildError(f"negative doc_id {doc.doc_id}")
        if doc.doc_id in seen:
            raise IndexBuildError(f"duplicate doc_id {doc.doc_id}")
        seen.add(doc.doc_id)


def lookup_exact(index: TrieIndex, token: str) -> List[int]:
    """Walk the trie letter by letter; postings of the end node, if it is a word end."""
    node = 0
    for ch in token:
        code = LETTER_CODE.get(ch)
        if code is None:
            return []
        for child in index.children(node):
            if index.letters[child] == code:
                node = child
                break
        else:
            return []
    if node == 0:
        return []
    return TrieNode(index, node).postings


def read_reference_list(path: str | Path) -> List[Document]:
    """Parse ``doc_id<TAB>raw_name`` lines; ``#`` lines and blank lines are skipped."""
    documents = []
    seen = set()
    with open(path, encoding="utf-8") as fh, paused_gc():
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t", 1)
            if len(parts) != 2:
                raise ReferenceFormatError("expected doc_id<TAB>name", lineno)
            try:
                doc_id = int(parts[0])
            except ValueError:
                raise ReferenceFormatError(f"bad doc_id {parts[0]!r}", lineno) from None
            if doc_id < 0:
                raise ReferenceFormatError(f"negative doc_id {doc_id}", lineno)
            if doc_id in seen:
                raise ReferenceFormatError(f"duplicate doc_id {doc_id}", lineno)
            seen.add(doc_id)
            documents.append(Document.from_name(doc_id, parts[1]))
    if not documents:
        raise ReferenceFormatError("no documents")
    return documents


def write_reference_list(documents: Iterable[Document], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for doc in documents:
            fh.write(f"{doc.doc_id}\t{doc.raw_name}\n")
