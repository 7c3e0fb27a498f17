"""Comparison systems: SingleRank and TopicRank, each with its variant."""
from __future__ import annotations

import enum
from typing import Sequence

import numpy as np

from .candidates import Candidate, PatternKind, extract_candidates
from .corpus import Coarse, Document
from .graph import WeightedDigraph, inverse_distance_matrix
from .rank import DAMPING, RankedList, order_by_score, select_top, textrank, textrank_scores
from .stem import stem_word
from .topics import TopicPartition


class BaselineKind(enum.Enum):
    SINGLE_RANK = "single_rank"
    SINGLE_RANK_NORMALIZED = "single_rank_normalized"
    TOPIC_RANK = "topic_rank"
    TOPIC_RANK_NO_TOPICS = "topic_rank_no_topics"


def word_graph(doc: Document, window: int = 10) -> tuple[list[str], WeightedDigraph]:
    """Co-occurrence graph over noun/adjective word stems.

    Two tokens co-occur when their offsets differ by at most ``window``;
    distance is measured on the full token sequence, across sentences.
    """
    if window < 2:
        raise ValueError("window must be at least 2")
    index: dict[str, int] = {}
    seq = []
    for tok in doc.tokens:
        if tok.coarse is Coarse.OTHER:
            continue
        seq.append((tok.offset, index.setdefault(stem_word(tok.surface), len(index))))
    w = np.zeros((len(index), len(index)))
    for a, (pa, u) in enumerate(seq):
        for pb, v in seq[a + 1 :]:
            if pb - pa > window:
                break
            if u != v:
                w[u, v] += 1
                w[v, u] += 1
    return list(index), WeightedDigraph(w)


def singlerank_word_scores(
    doc: Document, window: int = 10, damping: float = DAMPING
) -> dict[str, float]:
    words, g = word_graph(doc, window)
    if not words:
        return {}
    scores, _, _ = textrank_scores(g, damping)
    return dict(zip(words, scores.tolist()))


def singlerank_ranking(
    doc: Document,
    window: int = 10,
    normalized: bool = False,
    pattern: PatternKind = PatternKind.NA_PLUS,
    damping: float = DAMPING,
) -> tuple[list[Candidate], RankedList]:
    cands = extract_candidates(doc, pattern)
    words, g = word_graph(doc, window)
    if not cands:
        return cands, RankedList((), 0, True)
    word_scores, sweeps, converged = textrank_scores(g, damping)
    lookup = dict(zip(words, word_scores.tolist()))
    scores = [candidate_score(c, lookup, normalized) for c in cands]
    return cands, RankedList(tuple(order_by_score(scores, cands)), sweeps, converged)


def candidate_score(cand: Candidate, word_scores: dict[str, float], normalized: bool) -> float:
    total = sum(word_scores.get(s, 0.0) for s in cand.stems)
    return total / len(cand.stems) if normalized else total


def singlerank(doc: Document, window: int = 10, normalized: bool = False, n: int = 10) -> list[str]:
    cands, ranked = singlerank_ranking(doc, window, normalized)
    return select_top(ranked, cands, n) if cands else []


def topic_graph(cands: Sequence[Candidate], topics: TopicPartition) -> WeightedDigraph:
    """Graph whose nodes are topics, weighted by summed inverse distances."""
    w = inverse_distance_matrix(cands)
    onehot = np.zeros((len(cands), topics.k))
    onehot[np.arange(len(cands)), topics.assignment] = 1.0
    tw = onehot.T @ w @ onehot
    np.fill_diagonal(tw, 0.0)
    return WeightedDigraph(tw)


def topicrank_ranking(
    cands: Sequence[Candidate],
    topics: TopicPartition,
    use_topics: bool = True,
    damping: float = DAMPING,
) -> RankedList:
    """Rank topics and keep each topic's first-occurring candidate, or, with
    ``use_topics=False``, rank candidates on the complete candidate graph."""
    if not cands:
        return RankedList((), 0, True)
    if not use_topics:
        return textrank(WeightedDigraph(inverse_distance_matrix(cands)), cands, damping)
    scores, sweeps, converged = textrank_scores(topic_graph(cands, topics), damping)
    heads = [members[0] for members in topics.members]
    return RankedList(tuple(order_by_score(scores, cands, heads)), sweeps, converged)


def topicrank(
    doc: Document,
    topics: TopicPartition,
    use_topics: bool = True,
    n: int = 10,
    pattern: PatternKind = PatternKind.NA_PLUS,
) -> list[str]:
    cands = extract_candidates(doc, pattern)
    if len(topics) != len(cands):
        raise ValueError("partition does not match the document's candidates")
    return select_top(topicrank_ranking(cands, topics, use_topics), cands, n) if cands else []
