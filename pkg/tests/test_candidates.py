import random

from hypothesis import given, strategies as st

from mpkeyrank.candidates import PatternKind, extract_candidates
from mpkeyrank.corpus import Coarse, Document


def doc_of(pairs, sentences=None):
    sentences = sentences or [0] * len(pairs)
    return Document.from_tagged("d", [(w, p, s) for (w, p), s in zip(pairs, sentences)])


def test_na_plus_example():
    doc = doc_of([("the", "DT"), ("inverse", "JJ"), ("distances", "NNS"), ("between", "IN"), ("occurrences", "NNS")])
    cands = extract_candidates(doc)
    assert [(c.surface, c.positions) for c in cands] == [("inverse distances", (2,)), ("occurrences", (5,))]


def test_no_candidates():
    assert extract_candidates(doc_of([("we", "PRP"), ("run", "VBP"), (".", ".")])) == []


def test_merge_by_stem():
    pairs = [("x", "DT")] * 40
    pairs[2] = ("graphs", "NNS")
    pairs[39] = ("Graph", "NN")
    (cand,) = extract_candidates(doc_of(pairs))
    assert cand.positions == (3, 40)
    assert cand.first_offset == 3
    assert cand.surfaces == ("graphs", "Graph")


def test_sentence_boundary_splits_runs():
    doc = doc_of([("graph", "NN"), ("model", "NN")], sentences=[0, 1])
    assert [c.surface for c in extract_candidates(doc)] == ["graph", "model"]


def test_adj_star_noun_plus():
    pairs = [("big", "JJ"), ("graph", "NN"), ("red", "JJ"), ("model", "NN"), ("is", "VBZ"),
             ("model", "NN"), ("old", "JJ"), ("is", "VBZ"), ("happy", "JJ"), (".", ".")]
    cands = extract_candidates(doc_of(pairs), PatternKind.ADJ_STAR_NOUN_PLUS)
    assert [(c.surface, c.positions) for c in cands] == [("red model", (3,)), ("model", (6,))]


@st.composite
def tagged_docs(draw):
    n = draw(st.integers(1, 40))
    tags = draw(st.lists(st.sampled_from(["NN", "JJ", "DT", "VB"]), min_size=n, max_size=n))
    words = draw(st.lists(st.sampled_from(["graph", "graphs", "model", "big", "topic", "the", "run"]), min_size=n, max_size=n))
    sents = sorted(draw(st.lists(st.integers(0, 3), min_size=n, max_size=n)))
    return Document.from_tagged("d", list(zip(words, tags, sents)))


@given(tagged_docs())
def test_na_plus_covers_exactly_noun_adjective_tokens(doc):
    cands = extract_candidates(doc)
    covered = []
    for c in cands:
        assert list(c.positions) == sorted(set(c.positions))
        assert c.first_offset == c.positions[0]
        for pos in c.positions:
            covered.extend(range(pos, pos + len(c)))
            sents = {doc.tokens[p - 1].sentence_index for p in range(pos, pos + len(c))}
            assert len(sents) == 1
    assert sorted(covered) == [t.offset for t in doc.tokens if t.coarse is not Coarse.OTHER]
    assert len({c.key for c in cands}) == len(cands)
    assert [c.first_offset for c in cands] == sorted(c.first_offset for c in cands)


@given(tagged_docs())
def test_adj_pattern_spans_end_in_noun(doc):
    for c in extract_candidates(doc, PatternKind.ADJ_STAR_NOUN_PLUS):
        for pos in c.positions:
            span = doc.tokens[pos - 1: pos - 1 + len(c)]
            coarse = [t.coarse for t in span]
            assert coarse[-1] is Coarse.NOUN
            first_noun = coarse.index(Coarse.NOUN)
            assert all(x is Coarse.ADJECTIVE for x in coarse[:first_noun])
            assert all(x is Coarse.NOUN for x in coarse[first_noun:])
