"""F1@N, average precision and topic coverage under stemmed matching."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .stem import stem_phrase
from .topics import TopicPartition

DEFAULT_CUTOFFS = (5, 10)


def stem_key(phrase: str) -> str:
    return stem_phrase(phrase.lower().split()).joined


def _dedupe(phrases: Iterable[str]) -> list[str]:
    seen = set()
    out = []
    for p in phrases:
        key = stem_key(p)
        if key not in seen:
            seen.add(key)
            out.append(key)
    return out


def _gold_keys(gold: Sequence[str]) -> set[str]:
    if not gold:
        raise ValueError("gold list is empty")
    return set(_dedupe(gold))


def match_stems(extracted: str, gold: Sequence[str]) -> bool:
    """True iff ``extracted`` equals some gold phrase after stemming."""
    key = stem_key(extracted)
    return any(stem_key(g) == key for g in gold)


def f1_at_k(
    extracted: Sequence[str], gold: Sequence[str], k: int, strict: bool = False
) -> tuple[float, float, float]:
    """Precision, recall and F1 over the top ``k`` extracted phrases.

    Precision divides by ``min(k, len(extracted))`` unless ``strict``, in
    which case it divides by ``k``. Both lists are deduplicated by stem.
    """
    if k < 1:
        raise ValueError("k must be positive")
    gold_keys = _gold_keys(gold)
    top = _dedupe(extracted)[:k]
    denom = k if strict else len(top)
    if denom == 0:
        return 0.0, 0.0, 0.0
    matches = sum(key in gold_keys for key in top)
    p = matches / denom
    r = matches / len(gold_keys)
    f = 0.0 if p + r == 0 else 2 * p * r / (p + r)
    return p, r, f


def average_precision(extracted: Sequence[str], gold: Sequence[str]) -> float:
    gold_keys = _gold_keys(gold)
    hits = 0
    total = 0.0
    for rank, key in enumerate(_dedupe(extracted), start=1):
        if key in gold_keys:
            hits += 1
            total += hits / rank
    return total / len(gold_keys)


def topic_coverage(extracted_indices: Sequence[int], topics: TopicPartition, k: int) -> float:
    """Fraction of distinct topics among the top ``k`` entries."""
    top = list(extracted_indices)[:k]
    if not top:
        return 0.0
    return len({topics.topic_of(i) for i in top}) / len(top)


@dataclass
class DocScore:
    precision_at: dict[int, float] = field(default_factory=dict)
    recall_at: dict[int, float] = field(default_factory=dict)
    f1_at: dict[int, float] = field(default_factory=dict)
    average_precision: float = 0.0
    topic_coverage_at: dict[int, float] = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {}
        for n in sorted(self.f1_at):
            out[f"P@{n}"] = self.precision_at[n]
            out[f"R@{n}"] = self.recall_at[n]
            out[f"F1@{n}"] = self.f1_at[n]
        out["AP"] = self.average_precision
        for n in sorted(self.topic_coverage_at):
            out[f"coverage@{n}"] = self.topic_coverage_at[n]
        return out


@dataclass
class CorpusScore(DocScore):
    documents: int = 0

    def to_json(self) -> dict:
        out = super().to_json()
        out["MAP"] = out.pop("AP")
        out["documents"] = self.documents
        return out


def score_document(
    extracted: Sequence[str],
    extracted_indices: Sequence[int],
    gold: Sequence[str],
    topics: TopicPartition | None,
    cutoffs: Sequence[int] = DEFAULT_CUTOFFS,
    coverage_cutoffs: Sequence[int] = (10,),
    strict: bool = False,
) -> DocScore:
    """Score one document; an empty extraction scores 0 everywhere."""
    score = DocScore()
    for n in cutoffs:
        p, r, f = f1_at_k(extracted, gold, n, strict)
        score.precision_at[n], score.recall_at[n], score.f1_at[n] = p, r, f
    score.average_precision = average_precision(extracted, gold)
    for n in coverage_cutoffs:
        score.topic_coverage_at[n] = (
            topic_coverage(extracted_indices, topics, n) if topics is not None else 0.0
        )
    return score


def macro_average(per_doc: Mapping[str, DocScore]) -> CorpusScore:
    """Average over documents, folding in sorted document-id order."""
    ids = sorted(per_doc)
    total = CorpusScore(documents=len(ids))
    if not ids:
        return total

    def mean(get):
        return sum(get(per_doc[i]) for i in ids) / len(ids)

    first = per_doc[ids[0]]
    for n in first.f1_at:
        total.precision_at[n] = mean(lambda s: s.precision_at[n])
        total.recall_at[n] = mean(lambda s: s.recall_at[n])
        total.f1_at[n] = mean(lambda s: s.f1_at[n])
    total.average_precision = mean(lambda s: s.average_precision)
    for n in first.topic_coverage_at:
        total.topic_coverage_at[n] = mean(lambda s: s.topic_coverage_at[n])
    return total
