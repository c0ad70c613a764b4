"""Precision, recall and F-beta over labeled screening queries."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from pathlib import Path
from typing import FrozenSet, Iterable, List, Sequence


@dataclass(frozen=True)
class LabeledQuery:
    query_text: str
    expected_doc_ids: FrozenSet[int]


@dataclass(frozen=True)
class Metrics:
    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f_beta: float
    beta: float
    macro_precision: float
    macro_recall: float
    macro_f_beta: float
    n_queries: int

    def to_dict(self) -> dict:
        return asdict(self)

    def table(self) -> str:
        rows = [
            ("queries", f"{self.n_queries}"),
            ("true positives", f"{self.tp}"),
            ("false positives", f"{self.fp}"),
            ("false negatives", f"{self.fn}"),
            ("precision", f"{self.precision:.4f}"),
            ("recall", f"{self.recall:.4f}"),
            (f"F{self.beta:g}", f"{self.f_beta:.4f}"),
            ("macro precision", f"{self.macro_precision:.4f}"),
            ("macro recall", f"{self.macro_recall:.4f}"),
            (f"macro F{self.beta:g}", f"{self.macro_f_beta:.4f}"),
        ]
        width = max(len(name) for name, _ in rows)
        return "\n".join(f"{name:<{width}}  {value:>10}" for name, value in rows)


def precision_recall(tp: int, fp: int, fn: int) -> tuple:
    # Nothing retrieved and nothing expected counts as perfect on both axes.
    if tp + fp == 0:
        precision = 0.0 if fn else 1.0
    else:
        precision = tp / (tp + fp)
    recall = tp / (tp + fn) if tp + fn else 1.0
    return precision, recall


def f_beta(precision: float, recall: float, beta: float = 5.0) -> float:
    b2 = beta * beta
    denom = b2 * precision + recall
    if denom == 0:
        return 0.0
    return (1 + b2) * precision * recall / denom


def evaluate(
    retrieved: Sequence[Iterable[int]],
    labels: Sequence[LabeledQuery],
    beta: float = 5.0,
) -> Metrics:
    """Micro-averaged metrics over (query, record) pairs, plus macro averages."""
    if len(retrieved) != len(labels):
        raise ValueError(f"{len(retrieved)} result sets for {len(labels)} labeled queries")
    tp = fp = fn = 0
    per_p, per_r, per_f = [], [], []
    for got, label in zip(retrieved, labels):
        got = set(got)
        q_tp = len(got & label.expected_doc_ids)
        q_fp = len(got - label.expected_doc_ids)
        q_fn = len(label.expected_doc_ids - got)
        tp, fp, fn = tp + q_tp, fp + q_fp, fn + q_fn
        p, r = precision_recall(q_tp, q_fp, q_fn)
        per_p.append(p)
        per_r.append(r)
        per_f.append(f_beta(p, r, beta))
    precision, recall = precision_recall(tp, fp, fn)
    n = len(labels)
    return Metrics(
        tp=tp,
        fp=fp,
        fn=fn,
        precision=precision,
        recall=recall,
        f_beta=f_beta(precision, recall, beta),
        beta=beta,
        macro_precision=sum(per_p) / n if n else 0.0,
        macro_recall=sum(per_r) / n if n else 0.0,
        macro_f_beta=sum(per_f) / n if n else 0.0,
        n_queries=n,
    )


def read_labels(path: str | Path) -> List[LabeledQuery]:
    """Parse ``query_text<TAB>doc_id[,doc_id...]`` lines; an empty id list marks a true negative."""
    labels = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            text, _, ids = line.rpartition("\t")
            if not _:
                raise ValueError(f"line {lineno}: expected query<TAB>ids")
            try:
                expected = frozenset(int(x) for x in ids.split(",") if x.strip())
            except ValueError:
                raise ValueError(f"line {lineno}: bad doc id list {ids!r}") from None
            labels.append(LabeledQuery(text, expected))
    return labels


def write_labels(labels: Iterable[LabeledQuery], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for label in labels:
            ids = ",".join(str(i) for i in sorted(label.expected_doc_ids))
            fh.write(f"{label.query_text}\t{ids}\n")
