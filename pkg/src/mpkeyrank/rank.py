"""Weighted TextRank and top-N selection."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .candidates import Candidate
from .graph import WeightedDigraph

log = logging.getLogger(__name__)

DAMPING = 0.85
TOL = 1e-8
MAX_ITER = 1000

# scores equal to this many decimals count as tied
_TIE_DECIMALS = 12


@dataclass(frozen=True)
class RankedList:
    entries: tuple[tuple[int, float], ...]
    iterations_used: int
    converged: bool

    def indices(self) -> list[int]:
        return [i for i, _ in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


def sort_key(score: float, cand: Candidate):
    return (-round(score, _TIE_DECIMALS), cand.first_offset, cand.key.joined)


def order_by_score(
    scores: Sequence[float],
    cands: Sequence[Candidate],
    nodes: Optional[Sequence[int]] = None,
) -> list[tuple[int, float]]:
    """Sort candidate indices by score, then first offset, then stemmed key.

    ``nodes`` restricts (and maps) which candidate each score belongs to; by
    default score ``i`` belongs to candidate ``i``.
    """
    if nodes is None:
        nodes = range(len(scores))
    pairs = [(c, float(s)) for c, s in zip(nodes, scores)]
    pairs.sort(key=lambda p: sort_key(p[1], cands[p[0]]))
    return pairs


def textrank_scores(
    g: WeightedDigraph,
    damping: float = DAMPING,
    tol: float = TOL,
    max_iter: int = MAX_ITER,
    init: Optional[np.ndarray] = None,
) -> tuple[np.ndarray, int, bool]:
    """Jacobi iteration of ``S(i) = (1-d) + d * sum_j w[j,i] * S(j) / out(j)``.

    Nodes without outgoing weight pass nothing on. Returns
    ``(scores, sweeps, converged)``.
    """
    if g.n < 1:
        raise ValueError("graph has no nodes")
    if not 0 < damping < 1:
        raise ValueError(f"damping must lie in (0, 1), got {damping}")
    w = g.weights
    if not np.isfinite(w).all():
        raise ValueError("graph contains a non-finite weight")
    out = w.sum(axis=1)
    inv_out = np.zeros_like(out)
    np.divide(1.0, out, out=inv_out, where=out > 0)
    transfer = w.T * inv_out[None, :]

    scores = np.ones(g.n) if init is None else np.asarray(init, dtype=float).copy()
    for sweep in range(1, max_iter + 1):
        new = (1.0 - damping) + damping * (transfer @ scores)
        delta = np.max(np.abs(new - scores))
        scores = new
        if delta < tol:
            return scores, sweep, True
    log.warning("textrank did not converge in %d sweeps (last change %.3g)", max_iter, delta)
    return scores, max_iter, False


def textrank(
    g: WeightedDigraph,
    cands: Sequence[Candidate],
    damping: float = DAMPING,
    tol: float = TOL,
    max_iter: int = MAX_ITER,
) -> RankedList:
    scores, sweeps, converged = textrank_scores(g, damping, tol, max_iter)
    return RankedList(tuple(order_by_score(scores, cands)), sweeps, converged)


def select_top(ranked: RankedList, cands: Sequence[Candidate], n: int) -> list[str]:
    if n < 1:
        raise ValueError("n must be positive")
    return [cands[i].surface for i, _ in ranked.entries[:n]]
