"""Keyphrase candidate selection by POS pattern."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .corpus import Coarse, Document, Token
from .stem import StemmedPhrase, stem_phrase


class PatternKind(enum.Enum):
    NA_PLUS = "na_plus"  # /(N|A)+/
    ADJ_STAR_NOUN_PLUS = "adj_star_noun_plus"  # /A*N+/


@dataclass(frozen=True)
class Candidate:
    key: StemmedPhrase
    surfaces: tuple[str, ...]
    positions: tuple[int, ...]

    @property
    def first_offset(self) -> int:
        return self.positions[0]

    @property
    def stems(self) -> tuple[str, ...]:
        return self.key.stems

    @property
    def surface(self) -> str:
        """Lowercased surface form of the first occurrence."""
        return self.surfaces[0].lower()

    def __len__(self) -> int:
        return len(self.key.stems)


def _runs(doc: Document):
    """Maximal runs of noun/adjective tokens inside one sentence."""
    run: list[Token] = []
    for tok in doc.tokens:
        if run and tok.sentence_index != run[-1].sentence_index:
            yield run
            run = []
        if tok.coarse is Coarse.OTHER:
            if run:
                yield run
            run = []
        else:
            run.append(tok)
    if run:
        yield run


def _adj_noun_suffix(run: list[Token]) -> list[Token]:
    end = len(run)
    while end and run[end - 1].coarse is not Coarse.NOUN:
        end -= 1
    if not end:
        return []
    start = end
    while start and run[start - 1].coarse is Coarse.NOUN:
        start -= 1
    while start and run[start - 1].coarse is Coarse.ADJECTIVE:
        start -= 1
    return run[start:end]


def extract_candidates(
    doc: Document, pattern: PatternKind = PatternKind.NA_PLUS
) -> list[Candidate]:
    """Select candidates and merge their occurrences by stemmed form.

    Returns candidates sorted by the offset of their first occurrence.
    """
    merged: dict[StemmedPhrase, tuple[list[str], list[int]]] = {}
    for run in _runs(doc):
        span = run if pattern is PatternKind.NA_PLUS else _adj_noun_suffix(run)
        if not span:
            continue
        words = [t.surface for t in span]
        key = stem_phrase(words)
        surfaces, positions = merged.setdefault(key, ([], []))
        surfaces.append(" ".join(words))
        positions.append(span[0].offset)
    cands = [
        Candidate(key, tuple(surfaces), tuple(positions))
        for key, (surfaces, positions) in merged.items()
    ]
    cands.sort(key=lambda c: c.first_offset)
    return cands
