"""Text normalization and query expansion.

Raw names and free-text payloads are folded to ASCII, lowercased and split
on anything outside ``[a-z0-9]``.  Queries are additionally expanded with
concatenations of consecutive tokens so that a name broken by a stray space
or line feed ("nether lands") still reaches its dictionary token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import List

FOLD_TABLE_VERSION = 1

ALPHABET = "abcdefghijklmnopqrstuvwxyz0123456789"

# Latin-1 Supplement and Latin Extended-A, folded to the nearest ASCII
# spelling.  Characters not listed here act as separators.
_FOLD_PAIRS = {
    "A": "ÀÁÂÃÄÅĀĂĄ",
    "a": "àáâãäåāăąª",
    "C": "ÇĆĈĊČ",
    "c": "çćĉċč",
    "D": "ĎĐÐ",
    "d": "ďđð",
    "E": "ÈÉÊËĒĔĖĘĚ",
    "e": "èéêëēĕėęě",
    "G": "ĜĞĠĢ",
    "g": "ĝğġģ",
    "H": "ĤĦ",
    "h": "ĥħ",
    "I": "ÌÍÎÏĨĪĬĮİ",
    "i": "ìíîïĩīĭįı",
    "J": "Ĵ",
    "j": "ĵ",
    "K": "Ķ",
    "k": "ķĸ",
    "L": "ĹĻĽĿŁ",
    "l": "ĺļľŀł",
    "N": "ÑŃŅŇŊ",
    "n": "ñńņňŉŋ",
    "O": "ÒÓÔÕÖØŌŎŐ",
    "o": "òóôõöøōŏőº",
    "R": "ŔŖŘ",
    "r": "ŕŗř",
    "S": "ŚŜŞŠ",
    "s": "śŝşšſ",
    "T": "ŢŤŦ",
    "t": "ţťŧ",
    "U": "ÙÚÛÜŨŪŬŮŰŲ",
    "u": "ùúûüũūŭůűų",
    "W": "Ŵ",
    "w": "ŵ",
    "Y": "ÝŶŸ",
    "y": "ýÿŷ",
    "Z": "ŹŻŽ",
    "z": "źżž",
}
_FOLD_MULTI = {
    "Æ": "AE",
    "æ": "ae",
    "Œ": "OE",
    "œ": "oe",
    "ß": "ss",
    "Þ": "TH",
    "þ": "th",
    "Ĳ": "IJ",
    "ĳ": "ij",
}

FOLD_TABLE = {ord(ch): base for base, chars in _FOLD_PAIRS.items() for ch in chars}
FOLD_TABLE.update({ord(ch): repl for ch, repl in _FOLD_MULTI.items()})

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def asciify(raw: str) -> str:
    """Fold Latin diacritics to ASCII; other non-ASCII characters pass through."""
    if raw.isascii():
        return raw
    return raw.translate(FOLD_TABLE)


def normalize_text(raw: str) -> List[str]:
    """Return the asciified, lowercased token list of ``raw``.

    >>> normalize_text("Müller-Łódź 42")
    ['muller', 'lodz', '42']
    """
    folded = asciify(raw).lower()
    return _TOKEN_RE.findall(folded)


@dataclass(frozen=True)
class Window:
    token: str
    start: int
    width: int


@dataclass
class ExpandedQuery:
    base: List[str]
    windows: List[Window] = field(default_factory=list)

    def search_tokens(self) -> List[str]:
        """Distinct tokens to probe, base tokens first, in expansion order."""
        seen = {}
        for tok in self.base:
            seen.setdefault(tok, None)
        for win in self.windows:
            seen.setdefault(win.token, None)
        return list(seen)


def expand_query(tokens: List[str], window_limit: int = 4) -> ExpandedQuery:
    """Add every concatenation of 2..window_limit consecutive tokens.

    Windows that spell an existing base token are skipped; repeated windows
    from different spans are kept since their span metadata differs.
    """
    if window_limit < 1:
        raise ValueError("window_limit must be >= 1")
    base = list(tokens)
    base_set = set(base)
    windows = []
    n = len(base)
    for width in range(2, min(window_limit, n) + 1):
        for start in range(n - width + 1):
            tok = "".join(base[start:start + width])
            if tok not in base_set:
                windows.append(Window(tok, start, width))
    return ExpandedQuery(base, windows)


def window_count(n_tokens: int, window_limit: int) -> int:
    """Number of spans of width 2..window_limit over ``n_tokens`` tokens."""
    return sum(n_tokens - w + 1 for w in range(2, min(window_limit, n_tokens) + 1))

