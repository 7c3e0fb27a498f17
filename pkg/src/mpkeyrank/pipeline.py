"""End-to-end extraction for every model, driven by a single run configuration."""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Optional

from .baselines import singlerank_ranking, topicrank_ranking
from .candidates import Candidate, PatternKind, extract_candidates
from .corpus import Document
from .graph import AdjustmentConfig, Variant, WeightedDigraph, adjust_weights, build_multipartite
from .rank import DAMPING, RankedList, textrank
from .topics import TopicPartition, cluster_topics


class ModelKind(enum.Enum):
    MULTIPARTITE = "multipartite"
    SINGLE_RANK = "single_rank"
    SINGLE_RANK_NORMALIZED = "single_rank_normalized"
    TOPIC_RANK = "topic_rank"
    TOPIC_RANK_NO_TOPICS = "topic_rank_no_topics"


@dataclass(frozen=True)
class RunConfig:
    model: ModelKind = ModelKind.MULTIPARTITE
    alpha: float = 1.1
    tau: float = 0.9
    tau_is_similarity: bool = False
    variant: Variant = Variant.PUBLISHED
    pattern: PatternKind = PatternKind.NA_PLUS
    top_n: int = 10
    damping: float = DAMPING
    window: int = 10
    strict_at_k: bool = False
    threads: int = 1

    def __post_init__(self):
        if not self.alpha >= 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if not 0 <= self.tau <= 1:
            raise ValueError(f"tau must lie in [0, 1], got {self.tau}")
        if self.top_n < 1:
            raise ValueError(f"top-n must be positive, got {self.top_n}")
        if not 0 < self.damping < 1:
            raise ValueError(f"lambda must lie in (0, 1), got {self.damping}")
        if self.window < 2:
            raise ValueError(f"window must be >= 2, got {self.window}")
        if self.threads < 1:
            raise ValueError(f"threads must be positive, got {self.threads}")

    @property
    def cutoff(self) -> float:
        """Distance at which clustering stops merging."""
        return 1.0 - self.tau if self.tau_is_similarity else self.tau

    def with_(self, **changes) -> "RunConfig":
        return replace(self, **changes)


@dataclass
class DocResult:
    doc_id: str
    cands: list[Candidate]
    topics: Optional[TopicPartition]
    ranked: RankedList
    graph: Optional[WeightedDigraph] = None

    def top(self, n: int) -> list[tuple[int, float]]:
        return list(self.ranked.entries[:n])

    def phrases(self, n: int) -> list[str]:
        return [self.cands[i].surface for i, _ in self.top(n)]

    @property
    def k_topics(self) -> int:
        return 0 if self.topics is None else self.topics.k


def run_document(doc: Document, config: RunConfig = RunConfig(), keep_graph: bool = False) -> DocResult:
    model = config.model
    if model in (ModelKind.SINGLE_RANK, ModelKind.SINGLE_RANK_NORMALIZED):
        cands, ranked = singlerank_ranking(
            doc,
            config.window,
            normalized=model is ModelKind.SINGLE_RANK_NORMALIZED,
            pattern=config.pattern,
            damping=config.damping,
        )
    else:
        cands = extract_candidates(doc, config.pattern)
        ranked = None

    if not cands:
        return DocResult(doc.id, cands, None, RankedList((), 0, True))
    topics = cluster_topics(cands, config.cutoff)

    graph = None
    if model is ModelKind.MULTIPARTITE:
        graph = build_multipartite(cands, topics)
        graph = adjust_weights(graph, cands, topics, AdjustmentConfig(config.alpha, config.variant))
        ranked = textrank(graph, cands, config.damping)
    elif model is ModelKind.TOPIC_RANK:
        ranked = topicrank_ranking(cands, topics, True, config.damping)
    elif model is ModelKind.TOPIC_RANK_NO_TOPICS:
        ranked = topicrank_ranking(cands, topics, False, config.damping)
    return DocResult(doc.id, cands, topics, ranked, graph if keep_graph else None)
