#!/usr/bin/env python3
"""Subtree index command line.

Subcommands:
    ingest  bracketed corpus -> data file
    build   data file -> index file (--mss, --scheme)
    query   run a query, or a file of queries, against an index
    stats   corpus and index summaries
    bench   latency of a query file, bucketed by matches and size
    gen     synthetic corpus and query files
"""

import argparse
import sys
from collections.abc import Iterable, Sequence
from pathlib import Path

from pydantic import BaseModel

from src.config.settings import SCHEME_NAMES, Settings
from src.corpus.bracketed import read_bracketed, to_bracketed
from src.corpus.datafile import DataFileReader, write_data_file
from src.corpus.stats import corpus_stats
from src.execution.engine import QueryEngine, QueryResult
from src.index.builder import build_index
from src.index.reader import SubtreeIndex
from src.index.stats import index_stats
from src.models.records import FREQUENCY_CLASSES, BinLatency, GeneratorConfig, QuerySpec, RunConfig
from src.subtrees.growth import subtree_growth
from src.testkit.generator import gen_corpus
from src.testkit.queries import gen_queries, split_corpus
from src.tools.bench import BenchmarkTool
from src.tools.oracle_check import OracleCheckTool
from src.utils.errors import SubtreeIndexError
from src.utils.logger import configure_logging, logger


def _write_records(path: str | None, records: Iterable[BaseModel]) -> None:
    if not path:
        return
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("a", encoding="utf-8") as fh:
        for record in records:
            fh.write(record.model_dump_json() + "\n")
    logger.info(f"Appended records to {out}")


def _print_table(title: str, record: BaseModel, skip: Sequence[str] = ()) -> None:
    print(title)
    for name, value in record.model_dump().items():
        if name not in skip:
            print(f"  {name:<16} {value}")


def _read_queries(path: str) -> list[str]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return [line.strip() for line in lines if line.strip() and not line.lstrip().startswith("#")]


def cmd_ingest(args: argparse.Namespace) -> int:
    summary = write_data_file(read_bracketed(args.corpus), args.output)
    _print_table("data file", summary)
    return 0


def cmd_build(args: argparse.Namespace) -> int:
    summary = build_index(args.data, args.mss, args.scheme, args.output)
    _print_table("index", summary)
    _write_records(args.records, [summary])
    return 0


def _print_result(result: QueryResult, args: argparse.Namespace) -> None:
    if args.explain:
        for line in result.plan.explain():
            print(line)
    if args.count:
        print(len(result.matches))
    else:
        for line in result.matches.lines():
            print(line)
    if args.time:
        t = result.timings
        print(
            f"decompose={t.decompose * 1000:.3f}ms fetch={t.fetch * 1000:.3f}ms "
            f"join={t.join * 1000:.3f}ms filter={t.filter * 1000:.3f}ms total={t.total * 1000:.3f}ms"
        )


def cmd_query(args: argparse.Namespace) -> int:
    if (args.query is None) == (args.file is None):
        raise ValueError("give either a query or --file, not both")
    queries = [args.query] if args.file is None else _read_queries(args.file)
    engine = QueryEngine(args.index, args.data)
    try:
        if args.oracle and engine.data is None:
            logger.error("--oracle needs --data")
            return 2
        check = OracleCheckTool(engine.data) if args.oracle else None
        status = 0
        for text in queries:
            result = engine.execute(text, scheme=args.scheme, mss=args.mss)
            if args.file is not None:
                print(f"# {result.plan.query.render()}")
            _print_result(result, args)
            if check is not None:
                diff = check(result.plan.query, result.matches)
                for line in diff.lines():
                    print(line)
                if not diff.equal:
                    status = 1
        return status
    finally:
        engine.close()


def cmd_stats(args: argparse.Namespace) -> int:
    if not args.index and not args.data:
        logger.error("stats needs --index and/or --data")
        return 2
    records: list[BaseModel] = []
    if args.data:
        with DataFileReader(args.data) as reader:
            stats = corpus_stats(reader)
            _print_table(f"corpus {args.data}", stats, skip=("branching_histogram",))
            print(f"  {'branching':<16} {stats.branching_histogram}")
            records.append(stats)
            if args.growth:
                growth = subtree_growth(reader, args.growth)
                print(f"subtree growth (mss={args.growth})")
                for size in sorted(growth.keys_by_size):
                    print(
                        f"  size {size}: {growth.keys_by_size[size]} keys, "
                        f"{growth.instances_by_size[size]} instances"
                    )
                records.append(growth)
    if args.index:
        with SubtreeIndex.open(args.index) as index:
            stats = index_stats(index)
        _print_table(f"index {args.index}", stats, skip=("by_size",))
        for row in stats.by_size:
            print(f"  size {row.size}: {row.keys} keys, {row.postings} postings, {row.posting_bytes} bytes")
        records.append(stats)
    _write_records(args.records, records)
    return 0


def _latency_row(row: BinLatency) -> str:
    ms = [row.mean * 1000, row.p50 * 1000, row.p95 * 1000]
    return f"  {row.bucket:<10} {row.queries:>8} " + " ".join(f"{v:>10.3f}" for v in ms)


def cmd_bench(args: argparse.Namespace) -> int:
    engine = QueryEngine(args.index, args.data)
    try:
        report = BenchmarkTool(engine, args.repetitions, args.workers)(_read_queries(args.queries))
    finally:
        engine.close()
    print(f"{report.scheme} mss={report.mss}, {len(report.queries)} queries x {report.repetitions} runs")
    print(f"  {'matches':<10} {'queries':>8} {'mean ms':>10} {'p50 ms':>10} {'p95 ms':>10}")
    for row in report.by_bin:
        print(_latency_row(row))
    print(f"  {'size':<10} {'queries':>8} {'mean ms':>10} {'p50 ms':>10} {'p95 ms':>10}")
    for row in report.by_size:
        print(_latency_row(row))
    _write_records(args.records, [report])
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    corpus = gen_corpus(GeneratorConfig(seed=args.seed, tree_count=args.trees))
    indexed = corpus
    if args.queries_out:
        indexed, held_out = split_corpus(corpus, args.held_out, args.seed)
        spec = QuerySpec(
            seed=args.seed,
            classes=args.classes,
            sizes=list(range(args.min_size, args.max_size + 1)),
            per_class_size=args.per_class_size,
            descendant_ratio=args.descendant_ratio,
        )
        queries = gen_queries(held_out, spec)
        Path(args.queries_out).write_text("".join(q.render() + "\n" for q in queries), encoding="utf-8")
        print(f"wrote {len(queries)} queries to {args.queries_out}")
    Path(args.output).write_text("".join(to_bracketed(t) + "\n" for t in indexed), encoding="utf-8")
    print(f"wrote {len(indexed)} trees to {args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subtree-index", description="Subtree inverted index over parse trees")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Log debug detail")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Log warnings and errors only")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="Bracketed corpus to data file")
    p.add_argument("corpus")
    p.add_argument("-o", "--output", required=True, help="Data file to write")
    p.set_defaults(handler=cmd_ingest)

    p = sub.add_parser("build", help="Data file to index file")
    p.add_argument("data")
    p.add_argument("-o", "--output", required=True, help="Index file to write")
    p.add_argument("--mss", type=int, default=Settings.DEFAULT_MSS)
    p.add_argument("--scheme", choices=SCHEME_NAMES, default=Settings.DEFAULT_SCHEME)
    p.add_argument("--records", help="Append the build summary as JSON lines")
    p.set_defaults(handler=cmd_build)

    p = sub.add_parser("query", help="Run a query or a query file")
    p.add_argument("index")
    p.add_argument("query", nargs="?", help="Query text, e.g. 'NP(DT)(//NN)'")
    p.add_argument("--file", metavar="PATH", help="Run every query in PATH, one per line")
    p.add_argument("--data", help="Data file (required for filter-based indexes and --oracle)")
    p.add_argument("--scheme", choices=SCHEME_NAMES, help="Expected scheme of the index")
    p.add_argument("--mss", type=int, help="Expected mss of the index")
    p.add_argument("--explain", action="store_true", help="Print cover, leaves and predicates")
    p.add_argument("--count", action="store_true", help="Print only the number of matches")
    p.add_argument("--time", action="store_true", help="Print phase timings")
    p.add_argument("--oracle", action="store_true", help="Compare with brute-force matching")
    p.set_defaults(handler=cmd_query)

    p = sub.add_parser("stats", help="Corpus and index summaries")
    p.add_argument("--index")
    p.add_argument("--data")
    p.add_argument("--growth", type=int, metavar="MSS", help="Count keys and instances per size up to MSS")
    p.add_argument("--records", help="Append the summaries as JSON lines")
    p.set_defaults(handler=cmd_stats)

    p = sub.add_parser("bench", help="Latency of a query file")
    p.add_argument("index")
    p.add_argument("queries", help="File with one query per line")
    p.add_argument("--data")
    p.add_argument("--repetitions", type=int, default=Settings.BENCH_REPETITIONS)
    p.add_argument("--workers", type=int, default=Settings.BENCH_WORKERS)
    p.add_argument("--records", help="Append the report as JSON lines")
    p.set_defaults(handler=cmd_bench)

    p = sub.add_parser("gen", help="Synthetic corpus and queries")
    p.add_argument("-o", "--output", required=True, help="Bracketed corpus to write")
    p.add_argument("--trees", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--queries-out", help="Also write held-out queries to this file")
    p.add_argument("--held-out", type=float, default=0.1)
    p.add_argument("--classes", nargs="+", choices=FREQUENCY_CLASSES, default=list(FREQUENCY_CLASSES))
    p.add_argument("--min-size", type=int, default=1)
    p.add_argument("--max-size", type=int, default=10)
    p.add_argument("--per-class-size", type=int, default=1)
    p.add_argument("--descendant-ratio", type=float, default=0.0)
    p.set_defaults(handler=cmd_gen)
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        corpus=getattr(args, "corpus", None),
        data=getattr(args, "data", None),
        index=getattr(args, "index", None),
        scheme=getattr(args, "scheme", None),
        mss=getattr(args, "mss", None),
        query=getattr(args, "query", None) or getattr(args, "file", None) or getattr(args, "queries", None),
        explain=getattr(args, "explain", False),
        count=getattr(args, "count", False),
        time=getattr(args, "time", False),
        oracle=getattr(args, "oracle", False),
    )


def run(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv`` and run one subcommand.

    Returns:
        0 on success, 1 when --oracle finds a difference, 2 on any error

    """
    args = build_parser().parse_args(argv)
    configure_logging("DEBUG" if args.verbose else "WARNING" if args.quiet else Settings.LOG_LEVEL)
    try:
        Settings.validate()
        config = _run_config(args)
        logger.debug(f"Running {config.model_dump_json(exclude_none=True)}")
        return args.handler(args)
    except (SubtreeIndexError, ValueError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
