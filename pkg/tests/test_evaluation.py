import pytest
from hypothesis import given, strategies as st

from mpkeyrank.evaluation import (
    DocScore,
    average_precision,
    f1_at_k,
    macro_average,
    match_stems,
    score_document,
    topic_coverage,
)
from mpkeyrank.topics import TopicPartition

from conftest import make_cand


def test_match_stems():
    assert match_stems("keyphrase extraction", ["keyphrases extractions"])
    assert match_stems("graph model", ["graph model"])
    assert not match_stems("graph model", ["graph"])


def test_f1_examples():
    extracted = ["a", "b", "c", "d", "e", "f"]
    gold = ["b", "d", "x", "y"]
    p, r, f = f1_at_k(extracted, gold, 5)
    assert (p, r) == (0.4, 0.5) and f == pytest.approx(4 / 9, abs=1e-12)
    assert f1_at_k(["q", "r"], gold, 5) == (0.0, 0.0, 0.0)
    assert f1_at_k(["x", "y", "z"], ["z", "y", "x"], 5) == (1.0, 1.0, 1.0)


def test_f1_strict_and_empty():
    assert f1_at_k(["x", "y", "z"], ["x", "y", "z"], 5, strict=True)[0] == pytest.approx(0.6)
    assert f1_at_k([], ["x"], 5) == (0.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        f1_at_k(["x"], [], 5)


def test_dedup_by_stem():
    # "graphs" duplicates "graph" and is dropped before cutting at k
    p, r, f = f1_at_k(["graph", "graphs", "model"], ["model", "graph"], 2)
    assert (p, r) == (1.0, 1.0)
    # gold duplicates collapse too
    assert f1_at_k(["graph"], ["graph", "graphs"], 5)[1] == 1.0


def test_average_precision():
    assert average_precision(["a", "x", "b", "y"], ["a", "b"]) == pytest.approx(5 / 6, abs=1e-12)
    assert average_precision(["x", "y"], ["a"]) == 0.0
    assert average_precision(["b", "a", "x"], ["a", "b"]) == 1.0


def _partition(labels):
    cands = [make_cand(f"c{i}", [2 * i + 1]) for i in range(len(labels))]
    groups = {}
    for i, t in enumerate(labels):
        groups.setdefault(t, []).append(i)
    return TopicPartition.from_groups(list(groups.values()), cands)


def test_topic_coverage():
    part = _partition([0, 1, 2, 3, 4, 5, 6, 7, 8, 8, 9])
    assert topic_coverage(list(range(10)), part, 10) == pytest.approx(0.9)
    same = _partition([0, 0, 0, 0])
    assert topic_coverage([0, 1, 2, 3], same, 10) == 0.25
    assert topic_coverage([], same, 10) == 0.0


def test_macro_equals_single_document():
    s = score_document(["a", "x", "b"], [0, 1, 2], ["a", "b"], _partition([0, 1, 1]))
    macro = macro_average({"d": s})
    assert macro.f1_at == s.f1_at and macro.average_precision == s.average_precision
    assert macro.topic_coverage_at == s.topic_coverage_at and macro.documents == 1


def test_empty_extraction_scores_zero():
    s = score_document([], [], ["a"], None)
    assert s.f1_at == {5: 0.0, 10: 0.0} and s.average_precision == 0.0 and s.topic_coverage_at == {10: 0.0}
    assert macro_average({}).documents == 0


labels = st.sampled_from("abcdefgh")


@given(st.lists(labels, max_size=12, unique=True), st.lists(labels, min_size=1, max_size=8, unique=True), st.integers(1, 12))
def test_metric_bounds(extracted, gold, k):
    p, r, f = f1_at_k(extracted, gold, k)
    ap = average_precision(extracted, gold)
    for v in (p, r, f, ap):
        assert 0.0 <= v <= 1.0
    assert (ap == 1.0) == (set(extracted[: len(gold)]) == set(gold))
