"""Unsupervised keyphrase extraction over a multipartite candidate graph."""
from .baselines import BaselineKind, singlerank, topicrank
from .candidates import Candidate, PatternKind, extract_candidates
from .corpus import Document, GoldReferences, TagMap, parse_documents, parse_gold
from .graph import AdjustmentConfig, Variant, WeightedDigraph, adjust_weights, build_multipartite, edge_weight
from .pipeline import DocResult, ModelKind, RunConfig, run_document
from .rank import RankedList, select_top, textrank
from .stem import stem_phrase, stem_word
from .topics import TopicPartition, cluster_topics, stem_set_distance

__version__ = "0.1.0"

__all__ = [
    "AdjustmentConfig", "BaselineKind", "Candidate", "DocResult", "Document",
    "GoldReferences", "ModelKind", "PatternKind", "RankedList", "RunConfig",
    "TagMap", "TopicPartition", "Variant", "WeightedDigraph", "adjust_weights",
    "build_multipartite", "cluster_topics", "edge_weight", "extract_candidates",
    "parse_documents", "parse_gold", "run_document", "select_top", "singlerank",
    "stem_phrase", "stem_set_distance", "stem_word", "textrank", "topicrank",
]
