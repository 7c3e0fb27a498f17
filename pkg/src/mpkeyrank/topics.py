"""Topic clustering: average-linkage agglomeration over stem-overlap distance."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .candidates import Candidate


@dataclass(frozen=True)
class TopicPartition:
    """Disjoint assignment of candidate indices to topics ``0..k-1``.

    Topic ids are numbered by the offset of each topic's earliest member, and
    ``members[t]`` lists candidate indices sorted by first occurrence.
    """

    assignment: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.assignment)

    def topic_of(self, index: int) -> int:
        return self.assignment[index]

    @classmethod
    def from_groups(
        cls, groups: Sequence[Sequence[int]], cands: Sequence[Candidate]
    ) -> "TopicPartition":
        """Build a partition from any grouping of ``range(len(cands))``.

        This is the hook for plugging in an external topic decomposition.
        """
        seen: set[int] = set()
        cleaned = []
        for group in groups:
            group = sorted(set(group), key=lambda i: (cands[i].first_offset, i))
            if not group:
                continue
            if seen.intersection(group):
                raise ValueError("topics overlap")
            seen.update(group)
            cleaned.append(tuple(group))
        if seen != set(range(len(cands))):
            raise ValueError("topics do not cover exactly the candidate list")
        cleaned.sort(key=lambda g: (cands[g[0]].first_offset, g[0]))
        assignment = [0] * len(cands)
        for t, group in enumerate(cleaned):
            for i in group:
                assignment[i] = t
        return cls(tuple(assignment), tuple(cleaned))

    @classmethod
    def singletons(cls, cands: Sequence[Candidate]) -> "TopicPartition":
        return cls.from_groups([[i] for i in range(len(cands))], cands)


def stem_set_distance(a: Candidate, b: Candidate) -> float:
    """Jaccard distance between the stem sets of two candidates."""
    sa, sb = set(a.stems), set(b.stems)
    return 1.0 - len(sa & sb) / len(sa | sb)


def _scaled_distances(cands: Sequence[Candidate]) -> tuple[np.ndarray, int]:
    """Jaccard distances as exact integers ``D`` with ``d = D / scale``."""
    vocab: dict[str, int] = {}
    rows = [[vocab.setdefault(s, len(vocab)) for s in set(c.stems)] for c in cands]
    incidence = np.zeros((len(cands), len(vocab)), dtype=np.int64)
    for i, cols in enumerate(rows):
        incidence[i, cols] = 1
    inter = incidence @ incidence.T
    sizes = incidence.sum(axis=1)
    union = sizes[:, None] + sizes[None, :] - inter
    scale = math.lcm(*(int(u) for u in np.unique(union)))
    n = len(cands)
    if scale * n * n < 2**62:
        return (union - inter) * (scale // union), scale
    # too large for int64 sums; fall back to python ints
    union_o = union.astype(object)
    return (union_o - inter) * (scale // union_o), scale


def cluster_topics(cands: Sequence[Candidate], cutoff: float) -> TopicPartition:
    """Agglomerate candidates until the closest pair of clusters is farther
    apart than ``cutoff``.

    Each cluster is labelled by its lowest candidate index; among tied pairs
    the one with the lexicographically smallest ``(label, label)`` merges
    first. Candidate indices are expected in first-occurrence order, which is
    how :func:`extract_candidates` returns them.
    """
    n = len(cands)
    if n == 0:
        raise ValueError("cannot cluster an empty candidate list")
    sums, scale = _scaled_distances(cands)
    limit = Fraction(cutoff) * scale
    sizes = [1] * n
    members = {i: [i] for i in range(n)}

    avg = np.full((n, n), np.inf)
    upper = np.triu_indices(n, k=1)
    avg[upper] = [int(v) / scale for v in sums[upper]]

    while True:
        a, b = divmod(int(np.argmin(avg)), n)
        if not np.isfinite(avg[a, b]):
            break
        if Fraction(int(sums[a, b]), sizes[a] * sizes[b]) > limit:
            break
        sums[a, :] += sums[b, :]
        sums[:, a] += sums[:, b]
        sizes[a] += sizes[b]
        members[a].extend(members.pop(b))
        avg[b, :] = np.inf
        avg[:, b] = np.inf
        for c in members:
            if c == a:
                continue
            value = int(sums[a, c]) / (sizes[a] * sizes[c] * scale)
            if c < a:
                avg[c, a] = value
            else:
                avg[a, c] = value

    return TopicPartition.from_groups(list(members.values()), cands)
