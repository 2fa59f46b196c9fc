from .records import (
    FREQUENCY_CLASSES,
    MATCH_BINS,
    BenchReport,
    BinLatency,
    BuildSummary,
    CorpusStats,
    DataFileSummary,
    GeneratorConfig,
    IndexStats,
    PhaseTimings,
    QuerySpec,
    QueryTiming,
    RunConfig,
    SizeBreakdown,
    SubtreeGrowth,
    match_bin,
)

__all__ = [
    "FREQUENCY_CLASSES",
    "MATCH_BINS",
    "BenchReport",
    "BinLatency",
    "BuildSummary",
    "CorpusStats",
    "DataFileSummary",
    "GeneratorConfig",
    "IndexStats",
    "PhaseTimings",
    "QuerySpec",
    "QueryTiming",
    "RunConfig",
    "SizeBreakdown",
    "SubtreeGrowth",
    "match_bin",
]
