"""Weighted unit costs and length-dependent edit thresholds."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Dict, Iterable, Optional, Tuple

import numpy as np

from .normalize import ALPHABET

_SIZE = len(ALPHABET) + 1  # last row/column stands for NULL and non-alphabet letters
_CODE = {ch: i for i, ch in enumerate(ALPHABET)}

Pair = Tuple[str, str]


class CostConfigError(ValueError):
    pass


def _code(ch: Optional[str]) -> int:
    if ch is None:
        return _SIZE - 1
    return _CODE.get(ch, _SIZE - 1)


def _table(entries: Optional[Dict[Pair, float]], name: str) -> np.ndarray:
    table = np.ones((_SIZE, _SIZE), dtype=np.float64)
    for (a, b), cost in (entries or {}).items():
        if a not in _CODE or b not in _CODE:
            raise CostConfigError(f"{name} pair ({a!r}, {b!r}) uses a letter outside the alphabet")
        if not 0.0 <= cost <= 1.0:
            raise CostConfigError(f"{name} cost for ({a!r}, {b!r}) must be in [0, 1], got {cost}")
        table[_CODE[a], _CODE[b]] = cost
    return table


class CostMatrices:
    """Insertion, deletion and substitution unit costs.

    ``insertion[(prev, cur)]`` prices inserting record letter ``cur`` right
    after record letter ``prev``; ``deletion[(prev, cur)]`` prices dropping
    query letter ``cur`` that follows query letter ``prev``;
    ``substitution[(q, r)]`` prices reading record letter ``r`` where the
    query has ``q``.  Unlisted pairs, and any pair involving the start of a
    token (``None``) or a letter outside the alphabet, cost 1.
    """

    def __init__(
        self,
        insertion: Optional[Dict[Pair, float]] = None,
        deletion: Optional[Dict[Pair, float]] = None,
        substitution: Optional[Dict[Pair, float]] = None,
    ):
        self.insertion = dict(insertion or {})
        self.deletion = dict(deletion or {})
        self.substitution = dict(substitution or {})
        self.iuc_table = _table(self.insertion, "insertion")
        self.duc_table = _table(self.deletion, "deletion")
        self.suc_table = _table(self.substitution, "substitution")
        for t in (self.iuc_table, self.duc_table, self.suc_table):
            t.setflags(write=False)

    def iuc(self, prev: Optional[str], cur: Optional[str]) -> float:
        return float(self.iuc_table[_code(prev), _code(cur)])

    def duc(self, prev: Optional[str], cur: Optional[str]) -> float:
        return float(self.duc_table[_code(prev), _code(cur)])

    def suc(self, query_letter: Optional[str], record_letter: Optional[str]) -> float:
        return float(self.suc_table[_code(query_letter), _code(record_letter)])

    @property
    def is_uniform(self) -> bool:
        return not any(
            c != 1.0
            for c in (*self.insertion.values(), *self.deletion.values(), *self.substitution.values())
        )

    @property
    def min_indel(self) -> float:
        """Cheapest single insertion or deletion; bounds the cost of a length gap."""
        return float(min(self.iuc_table.min(), self.duc_table.min()))

    @classmethod
    def parse(cls, lines: Iterable[str]) -> "CostMatrices":
        """Read ``op<TAB>a<TAB>b<TAB>cost`` lines with op in {I, D, S}."""
        tables: Dict[str, Dict[Pair, float]] = {"I": {}, "D": {}, "S": {}}
        for lineno, line in enumerate(lines, 1):
            line = line.strip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 4 or parts[0] not in tables:
                raise CostConfigError(f"line {lineno}: expected op<TAB>a<TAB>b<TAB>cost with op in I/D/S")
            try:
                cost = float(parts[3])
            except ValueError:
                raise CostConfigError(f"line {lineno}: bad cost {parts[3]!r}") from None
            tables[parts[0]][(parts[1], parts[2])] = cost
        return cls(tables["I"], tables["D"], tables["S"])

    @classmethod
    def from_file(cls, path: str | Path) -> "CostMatrices":
        with open(path, encoding="utf-8") as fh:
            return cls.parse(fh)

    @classmethod
    def phonetic_sample(cls) -> "CostMatrices":
        text = resources.files("watchscreen").joinpath("data/phonetic_costs.tsv").read_text("utf-8")
        return cls.parse(text.splitlines())

    def __repr__(self) -> str:
        n = len(self.insertion) + len(self.deletion) + len(self.substitution)
        return f"CostMatrices({n} weighted pairs)"


UNIT_COSTS = CostMatrices()


@dataclass(frozen=True)
class ThresholdSchedule:
    """Maximum edit cost allowed for a token of a given length.

    ``bands`` is a list of ``(max_length, allowed)``; a length falls in the
    first band whose ``max_length`` it does not exceed, and lengths past the
    last band reuse it.
    """

    bands: Tuple[Tuple[int, float], ...]

    def __post_init__(self):
        if not self.bands:
            raise ValueError("threshold schedule needs at least one band")
        bands = tuple((int(m), float(a)) for m, a in self.bands)
        object.__setattr__(self, "bands", bands)
        for (m0, a0), (m1, a1) in zip(bands, bands[1:]):
            if m1 <= m0:
                raise ValueError("band lengths must be strictly increasing")
            if a1 < a0:
                raise ValueError("allowed distance must be non-decreasing with length")
        if bands[0][0] < 1 or bands[0][1] < 0:
            raise ValueError("band lengths must be >= 1 and distances >= 0")

    def __call__(self, length: int) -> float:
        for max_len, allowed in self.bands:
            if length <= max_len:
                return allowed
        return self.bands[-1][1]

    def for_query(self, query_len: int, max_len: int) -> np.ndarray:
        """Thresholds indexed by record length L: allowed(max(query_len, L))."""
        return np.array(
            [self(max(query_len, length)) for length in range(max_len + 1)], dtype=np.float64
        )

    @classmethod
    def parse(cls, text: str) -> "ThresholdSchedule":
        """Parse ``maxlen:dist`` pairs, e.g. ``3:0,6:1,10:2,999:3``."""
        bands = []
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            try:
                max_len, allowed = part.split(":")
                bands.append((int(max_len), float(allowed)))
            except ValueError:
                raise ValueError(f"bad threshold band {part!r}, expected maxlen:dist") from None
        return cls(tuple(bands))

    def __str__(self) -> str:
        return ",".join(f"{m}:{a:g}" for m, a in self.bands)


DEFAULT_SCHEDULE = ThresholdSchedule(((3, 0), (6, 1), (10, 2), (999, 3)))
