import json
import subprocess
import sys
from fractions import Fraction

import pytest

from mpkeyrank.cli import main, parse_grid, sweep, CliError
from mpkeyrank.pipeline import RunConfig

from conftest import DATA

DOCS = str(DATA / "fixture_docs.jsonl")
GOLD = str(DATA / "fixture_gold.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_extract_matches_frozen_output(capsys):
    code, out, _ = run(capsys, "extract", DOCS)
    assert code == 0
    assert out == (DATA / "fixture_expected.jsonl").read_text()
    record = json.loads(out.splitlines()[0])
    assert set(record) == {"id", "keyphrases", "k_topics", "converged"}
    assert set(record["keyphrases"][0]) == {"phrase", "score", "topic"}


def test_extract_to_file_and_threads(tmp_path, capsys):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert run(capsys, "extract", DOCS, "-o", str(a), "--threads", "1")[0] == 0
    assert run(capsys, "extract", DOCS, "-o", str(b), "--threads", "8")[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_missing_input_exit_1(capsys, tmp_path):
    missing = tmp_path / "nope.jsonl"
    code, _, err = run(capsys, "extract", str(missing))
    assert code == 1 and str(missing) in err


def test_malformed_input_exit_1(capsys, tmp_path):
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"id": "a", "tokens": [{"w": "x", "p": "NN", "s": 0}]}\n{oops\n')
    code, _, err = run(capsys, "extract", str(bad))
    assert code == 1 and "line 2" in err


@pytest.mark.parametrize("argv", [["--alpha", "-1"], ["--tau", "1.5"], ["--lambda", "1"], ["--top-n", "0"], ["--window", "1"]])
def test_invalid_config_exit_2(capsys, argv):
    assert run(capsys, "extract", DOCS, *argv)[0] == 2


def test_unknown_model_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["extract", DOCS, "--model", "lda"])
    assert exc.value.code == 2


def test_topic_rank_one_per_topic(capsys):
    _, out, _ = run(capsys, "extract", DOCS, "--model", "topic_rank")
    for line in out.splitlines():
        topics = [k["topic"] for k in json.loads(line)["keyphrases"]]
        assert len(topics) == len(set(topics))


def test_tag_map_and_similarity_flag(capsys, tmp_path):
    tag_map = tmp_path / "tags.json"
    tag_map.write_text('{"NN": "N"}')  # adjectives become Other
    _, out, _ = run(capsys, "extract", DOCS, "--tag-map", str(tag_map))
    phrases = [k["phrase"] for k in json.loads(out.splitlines()[0])["keyphrases"]]
    assert "unsupervised keyphrase extraction model" not in phrases
    assert "keyphrase extraction model" in phrases
    _, sim, _ = run(capsys, "extract", DOCS, "--tau", "0.1", "--tau-is-similarity")
    _, dist, _ = run(capsys, "extract", DOCS, "--tau", "0.9")
    assert sim == dist


def test_evaluate_fixture(capsys):
    code, out, err = run(capsys, "evaluate", DOCS, GOLD)
    assert code == 0
    report = json.loads(out)
    assert set(report) == {"per_doc", "macro", "params"}
    # hand-scored from the frozen top-5 lists:
    #   F1: 1 of 5 gold in top 5 -> F1 = 1/5; F2: 1 of 5 -> 1/5; F3: 2 of 4 -> 4/9
    assert report["macro"]["F1@5"] == pytest.approx(float(Fraction(38, 135)), abs=1e-12)
    assert report["per_doc"]["F3"]["F1@5"] == pytest.approx(4 / 9, abs=1e-12)
    assert report["macro"]["documents"] == 3
    for key in ("F1@10", "MAP", "coverage@10"):
        assert key in report["macro"]
    assert "F1@5" in err


def test_evaluate_missing_gold_id_exit_3(capsys, tmp_path):
    gold = tmp_path / "gold.json"
    gold.write_text('{"F1": ["graph"], "F3": ["graph"]}')
    code, _, err = run(capsys, "evaluate", DOCS, str(gold))
    assert code == 3 and "F2" in err and "F1," not in err


def test_evaluate_perfect_document(capsys, tmp_path):
    doc = tmp_path / "d.jsonl"
    doc.write_text(json.dumps({"id": "p", "tokens": [
        {"w": "graph", "p": "NN", "s": 0}, {"w": "is", "p": "VBZ", "s": 0}, {"w": "model", "p": "NN", "s": 0}]}) + "\n")
    gold = tmp_path / "g.json"
    gold.write_text('{"p": ["graphs", "model"]}')
    code, out, _ = run(capsys, "evaluate", str(doc), str(gold))
    assert code == 0 and json.loads(out)["macro"]["F1@5"] == 1.0


def test_dump_graph(capsys, tmp_path):
    code, _, _ = run(capsys, "extract", DOCS, "--dump-graph", str(tmp_path / "g"))
    assert code == 0
    files = sorted(p.name for p in (tmp_path / "g").iterdir())
    assert files == ["F1.tsv", "F2.tsv", "F3.tsv"]
    header = (tmp_path / "g" / "F1.tsv").read_text().splitlines()[0]
    assert header.startswith("k=37 n=")


def test_sweep_rows(capsys):
    code, out, _ = run(capsys, "sweep", DOCS, GOLD, "--grid", "alpha=0,1.1", "--grid", "cutoff=0.7,0.9")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split("\t") == ["alpha", "cutoff", "F1@5", "F1@10", "MAP"]
    rows = [list(map(float, l.split("\t"))) for l in lines[1:]]
    assert len(rows) == 4
    assert rows == sorted(rows, key=lambda r: (-r[3], r[0]))
    code, out, _ = run(capsys, "sweep", DOCS, GOLD)
    assert len(out.splitlines()) == 2 and out.splitlines()[1].startswith("1.1\t0.9\t")


def test_sweep_alpha_zero_equals_unadjusted(fixture_docs, fixture_gold, capsys):
    rows = sweep(fixture_docs, fixture_gold, RunConfig(), {"alpha": [0.0, 1.1]})
    zero = next(r for r in rows if r["alpha"] == 0.0)
    code, out, _ = run(capsys, "evaluate", DOCS, GOLD, "--variant", "draft")
    macro = json.loads(out)["macro"]
    assert (zero["F1@5"], zero["F1@10"], zero["MAP"]) == (macro["F1@5"], macro["F1@10"], macro["MAP"])


@pytest.mark.parametrize("spec", ["beta=1", "alpha", "alpha=x", "alpha="])
def test_bad_grid(spec):
    with pytest.raises(CliError) as exc:
        parse_grid([spec])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mpkeyrank", "extract", DOCS, "--top-n", "3"],
                          capture_output=True, text=True, check=True)
    assert len(proc.stdout.splitlines()) == 3
    assert all(len(json.loads(l)["keyphrases"]) == 3 for l in proc.stdout.splitlines())
