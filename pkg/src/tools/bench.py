"""Latency benchmark over a query file."""

import time
from collections import defaultdict
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from src.config.settings import Settings
from src.execution.engine import QueryEngine
from src.models.records import MATCH_BINS, BenchReport, BinLatency, PhaseTimings, QueryTiming, match_bin
from src.query.nodes import QueryNode
from src.query.parser import parse_query
from src.utils.logger import logger


def _latency(bucket: str, samples: Sequence[float]) -> BinLatency:
    arr = np.asarray(samples, dtype=np.float64)
    return BinLatency(
        bucket=bucket,
        queries=int(arr.size),
        mean=float(arr.mean()),
        p50=float(np.percentile(arr, 50)),
        p95=float(np.percentile(arr, 95)),
    )


class BenchmarkTool:
    """Runs every query of a set several times and aggregates the latencies.

    Queries are spread over a thread pool; each query's repetitions run on one
    worker. Per-query records keep the mean, median and 95th percentile of the
    repetitions together with the mean phase split.
    """

    def __init__(self, engine: QueryEngine, repetitions: int | None = None, workers: int | None = None):
        """Initialize the benchmark.

        Args:
            engine: Engine bound to the index under test
            repetitions: Runs per query (defaults to SI_BENCH_REPETITIONS)
            workers: Thread pool size (defaults to SI_BENCH_WORKERS)

        """
        self.engine = engine
        self.repetitions = repetitions or Settings.BENCH_REPETITIONS
        self.workers = workers or Settings.BENCH_WORKERS
        if self.repetitions < 1 or self.workers < 1:
            raise ValueError("repetitions and workers must be positive")

    def _time_query(self, q: QueryNode) -> QueryTiming:
        latencies: list[float] = []
        phases: list[PhaseTimings] = []
        matches = joins = 0
        for _ in range(self.repetitions):
            started = time.perf_counter()
            result = self.engine.execute(q)
            latencies.append(time.perf_counter() - started)
            phases.append(result.timings)
            matches, joins = len(result.matches), result.joins
        arr = np.asarray(latencies)
        return QueryTiming(
            query=q.render(),
            size=q.size,
            matches=matches,
            joins=joins,
            mean=float(arr.mean()),
            p50=float(np.percentile(arr, 50)),
            p95=float(np.percentile(arr, 95)),
            phases=PhaseTimings(
                decompose=float(np.mean([p.decompose for p in phases])),
                fetch=float(np.mean([p.fetch for p in phases])),
                join=float(np.mean([p.join for p in phases])),
                filter=float(np.mean([p.filter for p in phases])),
            ),
        )

    def __call__(self, queries: Iterable[str | QueryNode]) -> BenchReport:
        """Benchmark ``queries`` against the engine's index.

        Args:
            queries: Query texts or parsed queries

        Returns:
            BenchReport with per-query records, latency per match bin and per query size

        """
        parsed = [parse_query(q) if isinstance(q, str) else q for q in queries]
        logger.info(
            f"Benchmarking {len(parsed)} queries x {self.repetitions} runs on {self.workers} workers "
            f"({self.engine.index.scheme.value}, mss={self.engine.index.mss})"
        )
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            timings = list(pool.map(self._time_query, parsed))

        by_bin: dict[str, list[float]] = defaultdict(list)
        by_size: dict[int, list[float]] = defaultdict(list)
        for t in timings:
            by_bin[match_bin(t.matches)].append(t.mean)
            by_size[t.size].append(t.mean)

        report = BenchReport(
            scheme=self.engine.index.scheme.value,
            mss=self.engine.index.mss,
            repetitions=self.repetitions,
            queries=timings,
            by_bin=[_latency(b, by_bin[b]) for b in MATCH_BINS if by_bin[b]],
            by_size=[_latency(str(s), by_size[s]) for s in sorted(by_size)],
        )
        logger.info(f"Mean latency {report.mean_latency * 1000:.3f} ms over {len(timings)} queries")
        return report
