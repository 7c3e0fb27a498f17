import random
import sys
from pathlib import Path

import pytest

from mpkeyrank.candidates import Candidate
from mpkeyrank.corpus import parse_documents, parse_gold
from mpkeyrank.stem import StemmedPhrase

DATA = Path(__file__).parent / "data"
sys.path.insert(0, str(Path(__file__).parent))


def make_cand(stems, positions, surface=None):
    if isinstance(stems, str):
        stems = stems.split()
    surface = surface or " ".join(stems)
    positions = tuple(sorted(positions))
    return Candidate(StemmedPhrase(tuple(stems)), (surface,) * len(positions), positions)


def random_candidates(rng: random.Random, n: int, vocab_size: int = 6, max_len: int = 3, max_occ: int = 3):
    """Candidates with distinct stem keys and non-overlapping offsets, in first-offset order."""
    vocab = [f"w{i}" for i in range(vocab_size)]
    keys = set()
    while len(keys) < n:
        keys.add(tuple(rng.choice(vocab) for _ in range(rng.randint(1, max_len))))
    keys = list(keys)
    counts = [rng.randint(1, max_occ) for _ in keys]
    offsets = rng.sample(range(1, 20 * sum(counts) + 2), sum(counts))
    cands, start = [], 0
    for key, c in zip(keys, counts):
        cands.append(make_cand(list(key), offsets[start:start + c]))
        start += c
    cands.sort(key=lambda c: c.first_offset)
    return cands


@pytest.fixture(scope="session")
def fixture_docs():
    with open(DATA / "fixture_docs.jsonl", "rb") as fp:
        return parse_documents(fp)


@pytest.fixture(scope="session")
def fixture_gold():
    with open(DATA / "fixture_gold.json", "rb") as fp:
        return parse_gold(fp)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
