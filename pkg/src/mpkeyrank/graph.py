"""Complete directed multipartite candidate graph and positional weight adjustment."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, IO, Optional, Sequence

import numpy as np

from .candidates import Candidate
from .topics import TopicPartition


class Variant(enum.Enum):
    PUBLISHED = "published"
    DRAFT = "draft"


@dataclass(frozen=True)
class AdjustmentConfig:
    alpha: float = 1.1
    variant: Variant = Variant.PUBLISHED

    def __post_init__(self):
        if not self.alpha >= 0:
            raise ValueError(f"alpha must be non-negative, got {self.alpha}")


@dataclass(frozen=True, eq=False)
class WeightedDigraph:
    """Dense weight matrix over candidate indices; ``weights[i, j]`` is the
    weight of edge ``i -> j`` and 0 means no edge.

    ``topics`` holds the topic id of each node, or None for graphs that are
    not built over a partition (e.g. word graphs).
    """

    weights: np.ndarray
    topics: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        self.weights.setflags(write=False)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    @property
    def k(self) -> Optional[int]:
        return None if self.topics is None else len(set(self.topics))

    def weight(self, i: int, j: int) -> float:
        return float(self.weights[i, j])

    def edges(self):
        """Yield ``(i, j, weight)`` for every edge in row-major order."""
        for i, j in zip(*np.nonzero(self.weights)):
            yield int(i), int(j), float(self.weights[i, j])

    def edge_count(self) -> int:
        return int(np.count_nonzero(self.weights))


def edge_weight(ci: Candidate, cj: Candidate) -> float:
    """Sum of inverse distances between all occurrence pairs of two candidates."""
    total = 0.0
    for pi in ci.positions:
        for pj in cj.positions:
            d = abs(pi - pj)
            if d == 0:
                raise ValueError(
                    f"candidates {ci.key} and {cj.key} share offset {pi}"
                )
            total += 1.0 / d
    return total


def inverse_distance_matrix(cands: Sequence[Candidate]) -> np.ndarray:
    """All pairwise :func:`edge_weight` values, zero on the diagonal."""
    n = len(cands)
    owner = np.concatenate(
        [np.full(len(c.positions), i) for i, c in enumerate(cands)]
    ) if n else np.zeros(0, dtype=int)
    allpos = np.concatenate([c.positions for c in cands]).astype(float) if n else np.zeros(0)
    w = np.zeros((n, n))
    for i, c in enumerate(cands):
        dist = np.abs(np.asarray(c.positions, dtype=float)[:, None] - allpos[None, :])
        dist[:, owner == i] = np.inf
        if not dist.all():
            raise ValueError(f"candidate {c.key} shares an offset with another candidate")
        w[i] = np.bincount(owner, weights=(1.0 / dist).sum(axis=0), minlength=n)
    # keep the matrix exactly symmetric regardless of summation order
    upper = np.triu(w, k=1)
    return upper + upper.T


def build_multipartite(
    cands: Sequence[Candidate], topics: TopicPartition
) -> WeightedDigraph:
    if len(topics) != len(cands):
        raise ValueError(
            f"partition covers {len(topics)} candidates, got {len(cands)}"
        )
    labels = np.asarray(topics.assignment)
    w = inverse_distance_matrix(cands)
    w[labels[:, None] == labels[None, :]] = 0.0
    return WeightedDigraph(w, tuple(topics.assignment))


SelectionHeuristic = Callable[[Sequence[int], Sequence[Candidate]], int]


def first_position(members: Sequence[int], cands: Sequence[Candidate]) -> int:
    """Pick the topic member that occurs first in the document."""
    return min(members, key=lambda i: cands[i].first_offset)


def adjust_weights(
    g: WeightedDigraph,
    cands: Sequence[Candidate],
    topics: TopicPartition,
    cfg: AdjustmentConfig = AdjustmentConfig(),
    select: SelectionHeuristic = first_position,
) -> WeightedDigraph:
    """Promote one candidate per topic by raising its incoming edge weights.

    For the promoted node ``j`` of each topic and every incoming edge
    ``i -> j``:

    * PUBLISHED adds ``alpha * exp(1 / p_i) * sum_k w[k, i]``
    * DRAFT adds ``alpha * sum_k w[k, j]``

    with ``k`` ranging over the other members of ``j``'s topic and ``p_i`` the
    first offset of candidate ``i``. The sums read the weights as they were
    before any adjustment.
    """
    frozen = g.weights
    w = frozen.copy()
    if cfg.alpha == 0:
        return WeightedDigraph(w, g.topics)
    pos_factor = np.exp(1.0 / np.array([c.first_offset for c in cands], dtype=float))
    for members in topics.members:
        j = select(members, cands)
        others = [k for k in members if k != j]
        if not others:
            continue
        incoming = frozen[:, j] > 0
        if cfg.variant is Variant.PUBLISHED:
            boost = cfg.alpha * pos_factor * frozen[others, :].sum(axis=0)
        else:
            boost = np.full(len(cands), cfg.alpha * frozen[others, j].sum())
        w[incoming, j] += boost[incoming]
    return WeightedDigraph(w, g.topics)


def dump_graph(g: WeightedDigraph, fp: IO[str]) -> None:
    """Write the edge-list dump: a ``k=<topics> n=<nodes>`` header then
    ``i<TAB>j<TAB>weight`` lines."""
    k = g.k if g.k is not None else g.n
    fp.write(f"k={k} n={g.n}\n")
    for i, j, wt in g.edges():
        fp.write(f"{i}\t{j}\t{wt!r}\n")


def load_graph(fp: IO[str]) -> WeightedDigraph:
    header = fp.readline().split()
    try:
        fields = dict(part.split("=", 1) for part in header)
        n = int(fields["n"])
        int(fields["k"])
    except (ValueError, KeyError):
        raise ValueError(f"bad graph dump header: {' '.join(header)!r}") from None
    w = np.zeros((n, n))
    for line in fp:
        if not line.strip():
            continue
        i, j, wt = line.split("\t")
        w[int(i), int(j)] = float(wt)
    return WeightedDigraph(w)
