"""Command-line interface: ``extract``, ``evaluate`` and ``sweep``.

Exit codes: 0 success, 1 unreadable or malformed input, 2 invalid
configuration, 3 document ids missing from the gold file.
"""
from __future__ import annotations

import argparse
import contextlib
import itertools
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from .candidates import PatternKind
from .corpus import DEFAULT_TAG_MAP, CorpusFormatError, Document, TagMap, parse_documents, parse_gold
from .evaluation import CorpusScore, DocScore, macro_average, score_document
from .graph import Variant, dump_graph
from .pipeline import DocResult, ModelKind, RunConfig, run_document

log = logging.getLogger("mpkeyrank")

EXIT_OK, EXIT_INPUT, EXIT_CONFIG, EXIT_IDS = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _enum_arg(enum_cls):
    def parse(value: str):
        try:
            return enum_cls(value.lower().replace("-", "_"))
        except ValueError:
            choices = ", ".join(m.value for m in enum_cls)
            raise argparse.ArgumentTypeError(f"invalid choice {value!r} (choose from {choices})")

    parse.__name__ = enum_cls.__name__
    return parse


def _common_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    d = RunConfig()
    p.add_argument("--model", type=_enum_arg(ModelKind), default=d.model,
                   help="multipartite, single_rank, single_rank_normalized, topic_rank, topic_rank_no_topics")
    p.add_argument("--alpha", type=float, default=d.alpha, help="weight adjustment strength (default %(default)s)")
    p.add_argument("--tau", type=float, default=d.tau, help="topic clustering threshold (default %(default)s)")
    p.add_argument("--tau-is-similarity", action="store_true",
                   help="read --tau as a similarity, i.e. cut the dendrogram at distance 1 - tau")
    p.add_argument("--variant", type=_enum_arg(Variant), default=d.variant, help="published or draft")
    p.add_argument("--pattern", type=_enum_arg(PatternKind), default=d.pattern,
                   help="na_plus or adj_star_noun_plus")
    p.add_argument("--top-n", type=int, default=d.top_n)
    p.add_argument("--lambda", dest="damping", type=float, default=d.damping, help="damping factor")
    p.add_argument("--window", type=int, default=d.window, help="SingleRank co-occurrence window")
    p.add_argument("--strict-at-k", action="store_true", help="divide precision@k by k")
    p.add_argument("--threads", type=int, default=d.threads, help="worker processes")
    p.add_argument("--tag-map", type=Path, help="JSON file mapping tag prefixes to N, A or O")
    p.add_argument("--dump-graph", type=Path, metavar="DIR",
                   help="write each document's ranked multipartite graph to DIR/<id>.tsv")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="mpkeyrank", description="Multipartite graph keyphrase extraction.")
    sub = parser.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("extract", parents=[common], help="extract keyphrases to JSON lines")
    ex.add_argument("input", type=Path, help="documents, JSON lines")
    ex.add_argument("-o", "--output", type=Path, help="output file (default: stdout)")

    ev = sub.add_parser("evaluate", parents=[common], help="score extraction against gold keyphrases")
    ev.add_argument("input", type=Path)
    ev.add_argument("gold", type=Path)
    ev.add_argument("-o", "--output", type=Path, help="score report file (default: stdout)")

    sw = sub.add_parser("sweep", parents=[common], help="grid search over alpha and cutoff")
    sw.add_argument("input", type=Path)
    sw.add_argument("gold", type=Path)
    sw.add_argument("--grid", action="append", default=[], metavar="NAME=V1,V2,...",
                    help="values for alpha or cutoff (alias tau); repeatable")
    sw.add_argument("-o", "--output", type=Path, help="TSV table file (default: stdout)")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    try:
        return RunConfig(
            model=args.model,
            alpha=args.alpha,
            tau=args.tau,
            tau_is_similarity=args.tau_is_similarity,
            variant=args.variant,
            pattern=args.pattern,
            top_n=args.top_n,
            damping=args.damping,
            window=args.window,
            strict_at_k=args.strict_at_k,
            threads=args.threads,
        )
    except ValueError as exc:
        raise CliError(f"invalid configuration: {exc}", EXIT_CONFIG) from None


def load_tag_map(path: Path | None) -> TagMap:
    if path is None:
        return DEFAULT_TAG_MAP
    try:
        with path.open("rb") as fp:
            return TagMap.from_json(fp)
    except OSError as exc:
        raise CliError(f"cannot read tag map {path}: {exc.strerror}", EXIT_INPUT) from None
    except CorpusFormatError as exc:
        raise CliError(f"{path}: {exc}", EXIT_INPUT) from None


def load_documents(path: Path, tag_map: TagMap) -> list[Document]:
    try:
        with path.open("rb") as fp:
            return parse_documents(fp, tag_map)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_INPUT) from None
    except CorpusFormatError as exc:
        raise CliError(f"{path}: {exc}", EXIT_INPUT) from None


def load_gold(path: Path):
    try:
        with path.open("rb") as fp:
            return parse_gold(fp)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_INPUT) from None
    except CorpusFormatError as exc:
        raise CliError(f"{path}: {exc}", EXIT_INPUT) from None


def _run_one(job: tuple[Document, RunConfig, bool]) -> DocResult:
    doc, config, keep_graph = job
    return run_document(doc, config, keep_graph)


def run_corpus(docs: Sequence[Document], config: RunConfig, keep_graph: bool = False) -> list[DocResult]:
    """Process documents with ``config.threads`` workers, in input order."""
    jobs = [(doc, config, keep_graph) for doc in docs]
    if config.threads == 1 or len(docs) < 2:
        return [_run_one(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=config.threads) as pool:
        return list(pool.map(_run_one, jobs, chunksize=1))


def extraction_record(result: DocResult, top_n: int) -> dict:
    keyphrases = [
        {
            "phrase": result.cands[i].surface,
            "score": score,
            "topic": result.topics.topic_of(i) if result.topics is not None else None,
        }
        for i, score in result.top(top_n)
    ]
    return {
        "id": result.doc_id,
        "keyphrases": keyphrases,
        "k_topics": result.k_topics,
        "converged": result.ranked.converged,
    }


@contextlib.contextmanager
def _output(path: Path | None):
    if path is None:
        yield sys.stdout
        return
    try:
        fp = path.open("w", encoding="utf-8", newline="\n")
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}", EXIT_INPUT) from None
    with fp:
        yield fp


def _safe_name(doc_id: str) -> str:
    return "".join(ch if ch.isalnum() or ch in "-_." else "_" for ch in doc_id)


def cmd_extract(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    docs = load_documents(args.input, load_tag_map(args.tag_map))
    results = run_corpus(docs, config, keep_graph=args.dump_graph is not None)
    with _output(args.output) as out:
        for result in results:
            out.write(json.dumps(extraction_record(result, config.top_n), ensure_ascii=False) + "\n")
    if args.dump_graph is not None:
        write_graphs(results, args.dump_graph)
    log.info("extracted keyphrases from %d documents", len(results))
    return EXIT_OK


def write_graphs(results: Sequence[DocResult], directory: Path) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for result in results:
        if result.graph is None:
            continue
        with (directory / f"{_safe_name(result.doc_id)}.tsv").open("w") as fp:
            dump_graph(result.graph, fp)


def evaluate_results(results: Sequence[DocResult], gold, config: RunConfig) -> tuple[dict[str, DocScore], CorpusScore]:
    per_doc = {}
    for result in results:
        extracted = result.phrases(len(result.ranked))
        per_doc[result.doc_id] = score_document(
            extracted,
            result.ranked.indices(),
            gold[result.doc_id],
            result.topics,
            strict=config.strict_at_k,
        )
    return per_doc, macro_average(per_doc)


def check_ids(docs: Sequence[Document], gold) -> None:
    missing = [d.id for d in docs if d.id not in gold]
    if missing:
        raise CliError("documents missing from gold: " + ", ".join(missing), EXIT_IDS)


def config_params(config: RunConfig) -> dict:
    return {
        "model": config.model.value,
        "alpha": config.alpha,
        "tau": config.tau,
        "tau_is_similarity": config.tau_is_similarity,
        "cutoff": config.cutoff,
        "variant": config.variant.value,
        "pattern": config.pattern.value,
        "top_n": config.top_n,
        "lambda": config.damping,
        "window": config.window,
        "strict_at_k": config.strict_at_k,
    }


def summary_table(macro: CorpusScore) -> str:
    rows = [("documents", str(macro.documents))]
    for n in sorted(macro.f1_at):
        rows.append((f"P@{n}", f"{macro.precision_at[n]:.4f}"))
        rows.append((f"R@{n}", f"{macro.recall_at[n]:.4f}"))
        rows.append((f"F1@{n}", f"{macro.f1_at[n]:.4f}"))
    rows.append(("MAP", f"{macro.average_precision:.4f}"))
    for n in sorted(macro.topic_coverage_at):
        rows.append((f"coverage@{n}", f"{macro.topic_coverage_at[n]:.4f}"))
    width = max(len(name) for name, _ in rows)
    return "\n".join(f"{name:<{width}}  {value}" for name, value in rows)


def cmd_evaluate(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    docs = load_documents(args.input, load_tag_map(args.tag_map))
    gold = load_gold(args.gold)
    check_ids(docs, gold)
    results = run_corpus(docs, config, keep_graph=args.dump_graph is not None)
    per_doc, macro = evaluate_results(results, gold, config)
    report = {
        "per_doc": {doc_id: per_doc[doc_id].to_json() for doc_id in sorted(per_doc)},
        "macro": macro.to_json(),
        "params": config_params(config),
    }
    with _output(args.output) as out:
        out.write(json.dumps(report, indent=2) + "\n")
    if args.dump_graph is not None:
        write_graphs(results, args.dump_graph)
    print(summary_table(macro), file=sys.stderr)
    return EXIT_OK


GRID_KEYS = {"alpha": "alpha", "cutoff": "tau", "tau": "tau"}


def parse_grid(specs: Sequence[str]) -> dict[str, list[float]]:
    grid: dict[str, list[float]] = {}
    for spec in specs:
        name, sep, values = spec.partition("=")
        name = name.strip().lower()
        if not sep or name not in GRID_KEYS:
            raise CliError(f"bad grid entry {spec!r}; expected alpha=... or cutoff=...", EXIT_CONFIG)
        try:
            parsed = [float(v) for v in values.split(",") if v.strip()]
        except ValueError:
            raise CliError(f"bad number in grid entry {spec!r}", EXIT_CONFIG) from None
        if not parsed:
            raise CliError(f"grid entry {spec!r} lists no values", EXIT_CONFIG)
        grid.setdefault(GRID_KEYS[name], []).extend(parsed)
    return grid


def sweep(docs: Sequence[Document], gold, config: RunConfig, grid: dict[str, list[float]]) -> list[dict]:
    """Evaluate every (alpha, tau) combination; rows sorted by F1@10 then alpha."""
    alphas = grid.get("alpha", [config.alpha])
    taus = grid.get("tau", [config.tau])
    rows = []
    for alpha, tau in itertools.product(alphas, taus):
        try:
            point = config.with_(alpha=alpha, tau=tau)
        except ValueError as exc:
            raise CliError(f"invalid grid point: {exc}", EXIT_CONFIG) from None
        _, macro = evaluate_results(run_corpus(docs, point), gold, point)
        rows.append({
            "alpha": alpha,
            "cutoff": tau,
            "F1@5": macro.f1_at[5],
            "F1@10": macro.f1_at[10],
            "MAP": macro.average_precision,
        })
    rows.sort(key=lambda r: (-r["F1@10"], r["alpha"]))
    return rows


SWEEP_COLUMNS = ("alpha", "cutoff", "F1@5", "F1@10", "MAP")


def cmd_sweep(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    grid = parse_grid(args.grid)
    docs = load_documents(args.input, load_tag_map(args.tag_map))
    gold = load_gold(args.gold)
    check_ids(docs, gold)
    rows = sweep(docs, gold, config, grid)
    with _output(args.output) as out:
        out.write("\t".join(SWEEP_COLUMNS) + "\n")
        for row in rows:
            out.write("\t".join(repr(float(row[c])) for c in SWEEP_COLUMNS) + "\n")
    return EXIT_OK


COMMANDS = {"extract": cmd_extract, "evaluate": cmd_evaluate, "sweep": cmd_sweep}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(f"mpkeyrank: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
