from pydantic import (  # pyright: ignore[reportMissingImports]
    BaseModel,
    ConfigDict,
    Field,
    field_validator,
)

MATCH_BINS: tuple[str, ...] = ("<10", "10-100", "100-1k", "1k-10k", ">10k")
FREQUENCY_CLASSES: tuple[str, ...] = ("H", "M", "L", "HM", "HL", "ML", "HML")


def match_bin(match_count: int) -> str:
    """Bucket a result cardinality into the benchmark's match-count bins."""
    if match_count < 10:
        return MATCH_BINS[0]
    if match_count <= 100:
        return MATCH_BINS[1]
    if match_count <= 1_000:
        return MATCH_BINS[2]
    if match_count <= 10_000:
        return MATCH_BINS[3]
    return MATCH_BINS[4]


class DataFileSummary(BaseModel):
    """Counts reported after writing a data file."""

    path: str = Field(..., description="Location of the written data file")
    trees: int = Field(..., ge=0, description="Number of trees stored")
    nodes: int = Field(..., ge=0, description="Number of node tuples stored")
    labels: int = Field(..., ge=0, description="Size of the interned label table")
    bytes: int = Field(..., ge=0, description="File size in bytes")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {"path": "data/corpus.dat", "trees": 1000, "nodes": 23810, "labels": 412, "bytes": 601245}
        }
    )


class CorpusStats(BaseModel):
    """Shape statistics of a numbered corpus."""

    trees: int = Field(0, ge=0, description="Number of trees")
    nodes: int = Field(0, ge=0, description="Total node count")
    internal_nodes: int = Field(0, ge=0, description="Nodes with at least one child")
    avg_branching: float = Field(0.0, ge=0.0, description="Mean child count over internal nodes")
    max_branching: int = Field(0, ge=0, description="Largest child count of any node")
    labels: int = Field(0, ge=0, description="Size of the label alphabet")
    wide_nodes: int = Field(0, ge=0, description="Nodes with more than ten children")
    branching_histogram: dict[int, int] = Field(
        default_factory=dict, description="Child count -> number of internal nodes with that count"
    )

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "trees": 1000,
                "nodes": 23810,
                "internal_nodes": 11020,
                "avg_branching": 1.52,
                "max_branching": 11,
                "labels": 412,
                "wide_nodes": 2,
                "branching_histogram": {"1": 6120, "2": 3900, "3": 820},
            }
        }
    )


class SubtreeGrowth(BaseModel):
    """Distinct keys and instances per subtree size."""

    mss: int = Field(..., ge=1, description="Largest subtree size enumerated")
    keys_by_size: dict[int, int] = Field(..., description="Subtree size -> number of distinct keys")
    instances_by_size: dict[int, int] = Field(..., description="Subtree size -> number of instances")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "mss": 3,
                "keys_by_size": {"1": 412, "2": 1630, "3": 5120},
                "instances_by_size": {"1": 23810, "2": 22810, "3": 30112},
            }
        }
    )


class BuildSummary(BaseModel):
    """Outcome of building one index file."""

    path: str = Field(..., description="Location of the index file")
    scheme: str = Field(..., description="Coding scheme of the index")
    mss: int = Field(..., ge=1, description="Maximum subtree size of the keys")
    keys: int = Field(..., ge=0, description="Number of distinct keys")
    postings: int = Field(..., ge=0, description="Number of postings after deduplication")
    bytes: int = Field(..., ge=0, description="Index file size in bytes")
    runs: int = Field(..., ge=0, description="Sorted runs spilled during the external sort")
    wall_time: float = Field(..., ge=0.0, description="Build time in seconds")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "path": "data/rs3.idx",
                "scheme": "root-split",
                "mss": 3,
                "keys": 7162,
                "postings": 61034,
                "bytes": 880123,
                "runs": 1,
                "wall_time": 4.2,
            }
        }
    )


class SizeBreakdown(BaseModel):
    """Index contents restricted to keys of one subtree size."""

    size: int = Field(..., ge=1, description="Subtree size of the keys")
    keys: int = Field(0, ge=0, description="Number of keys of this size")
    postings: int = Field(0, ge=0, description="Postings stored under keys of this size")
    posting_bytes: int = Field(0, ge=0, description="Encoded posting bytes for keys of this size")


class IndexStats(BaseModel):
    """Size report of an index file."""

    scheme: str = Field(..., description="Coding scheme of the index")
    mss: int = Field(..., ge=1, description="Maximum subtree size")
    keys: int = Field(0, ge=0, description="Number of distinct keys")
    postings: int = Field(0, ge=0, description="Total posting count")
    bytes: int = Field(0, ge=0, description="File size in bytes")
    labels: int = Field(0, ge=0, description="Label alphabet size")
    key_bytes: int = Field(0, ge=0, description="Byte-aligned width of the largest key")
    key_bit_bound: int = Field(0, ge=0, description="Reference bit count for a key of size mss")
    by_size: list[SizeBreakdown] = Field(default_factory=list, description="Breakdown per subtree size")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "scheme": "subtree-interval",
                "mss": 2,
                "keys": 3,
                "postings": 7,
                "bytes": 2048,
                "labels": 2,
                "key_bytes": 10,
                "key_bit_bound": 6,
                "by_size": [{"size": 1, "keys": 2, "postings": 4, "posting_bytes": 22}],
            }
        }
    )


class PhaseTimings(BaseModel):
    """Wall time spent in each query phase, in seconds."""

    decompose: float = Field(0.0, ge=0.0, description="Cover construction and planning")
    fetch: float = Field(0.0, ge=0.0, description="Posting list reads")
    join: float = Field(0.0, ge=0.0, description="Structural merge joins or tid intersection")
    filter: float = Field(0.0, ge=0.0, description="Candidate tree fetch and exact matching")

    @property
    def total(self) -> float:
        return self.decompose + self.fetch + self.join + self.filter


class QueryTiming(BaseModel):
    """Latency record of one benchmarked query."""

    query: str = Field(..., description="Query text")
    size: int = Field(..., ge=1, description="Number of query nodes")
    matches: int = Field(..., ge=0, description="Result cardinality")
    joins: int = Field(..., ge=0, description="Binary joins in the plan")
    mean: float = Field(..., ge=0.0, description="Mean latency in seconds")
    p50: float = Field(..., ge=0.0, description="Median latency in seconds")
    p95: float = Field(..., ge=0.0, description="95th percentile latency in seconds")
    phases: PhaseTimings = Field(default_factory=PhaseTimings, description="Mean time per phase")


class BinLatency(BaseModel):
    """Aggregated latency of the queries that fall into one bucket."""

    bucket: str = Field(..., description="Match-count bin or query size")
    queries: int = Field(..., ge=0, description="Queries in the bucket")
    mean: float = Field(..., ge=0.0, description="Mean latency in seconds")
    p50: float = Field(..., ge=0.0, description="Median latency in seconds")
    p95: float = Field(..., ge=0.0, description="95th percentile latency in seconds")


class BenchReport(BaseModel):
    """Result of running a query file against one index."""

    scheme: str = Field(..., description="Coding scheme of the index")
    mss: int = Field(..., ge=1, description="Maximum subtree size of the index")
    repetitions: int = Field(..., ge=1, description="Runs per query")
    queries: list[QueryTiming] = Field(default_factory=list, description="Per-query records")
    by_bin: list[BinLatency] = Field(default_factory=list, description="Latency per match-count bin")
    by_size: list[BinLatency] = Field(default_factory=list, description="Latency per query size")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "scheme": "root-split",
                "mss": 3,
                "repetitions": 5,
                "queries": [],
                "by_bin": [{"bucket": "<10", "queries": 12, "mean": 0.004, "p50": 0.003, "p95": 0.009}],
                "by_size": [],
            }
        }
    )

    @property
    def mean_latency(self) -> float:
        if not self.queries:
            return 0.0
        return sum(q.mean for q in self.queries) / len(self.queries)


class GeneratorConfig(BaseModel):
    """Parameters of the synthetic treebank generator."""

    seed: int = Field(0, description="Master seed; equal seeds give equal corpora")
    tree_count: int = Field(100, ge=0, description="Number of trees to generate")
    max_depth: int = Field(9, ge=1, description="Depth at which every branch ends in a preterminal")
    stop_probability: float = Field(
        0.55, gt=0.0, le=1.0, description="Chance that a phrase child is a preterminal at depth 1"
    )
    stop_growth: float = Field(0.04, ge=0.0, description="Increase of the stop chance per level")
    branching_weights: list[float] = Field(
        default_factory=lambda: [0.25, 0.55, 0.15, 0.03, 0.008, 0.005, 0.003, 0.002, 0.001, 0.001],
        description="Relative weight of 1..n children for phrase nodes",
    )
    phrase_tags: list[str] = Field(
        default_factory=lambda: ["S", "NP", "VP", "PP", "SBAR", "ADJP", "ADVP", "WHNP", "QP", "PRN"],
        description="Labels of phrase nodes",
    )
    pos_tags: list[str] = Field(
        default_factory=lambda: [
            "NN", "NNS", "NNP", "DT", "JJ", "IN", "VBZ", "VBD", "VB", "VBN",
            "PRP", "CC", "CD", "RB", "TO", "WP", "WDT", "MD", "POS", "PRP$",
        ],
        description="Labels of preterminal nodes",
    )
    word_count: int = Field(300, ge=1, description="Size of the synthetic vocabulary")
    word_skew: float = Field(1.1, ge=0.0, description="Zipf exponent of word frequencies")

    model_config = ConfigDict(
        json_schema_extra={"example": {"seed": 7, "tree_count": 1000, "max_depth": 9, "word_count": 300}}
    )

    @field_validator("phrase_tags", "pos_tags")
    @classmethod
    def _non_empty(cls, value: list[str]) -> list[str]:
        if not value:
            raise ValueError("tag lists must not be empty")
        return value


class QuerySpec(BaseModel):
    """Which generated queries to draw from a corpus."""

    seed: int = Field(0, description="Seed for query sampling")
    classes: list[str] = Field(default_factory=lambda: list(FREQUENCY_CLASSES), description="Frequency classes")
    sizes: list[int] = Field(default_factory=lambda: list(range(1, 11)), description="Query sizes to draw")
    per_class_size: int = Field(1, ge=1, description="Queries per (class, size) pair")
    descendant_ratio: float = Field(0.0, ge=0.0, le=1.0, description="Share of edges drawn as // edges")
    attempts: int = Field(200, ge=1, description="Sampling attempts before a pair is reported unsatisfiable")

    model_config = ConfigDict(
        json_schema_extra={"example": {"seed": 3, "classes": ["H", "HM"], "sizes": [1, 2, 3], "per_class_size": 2}}
    )

    @field_validator("classes")
    @classmethod
    def _known_classes(cls, value: list[str]) -> list[str]:
        unknown = [c for c in value if c not in FREQUENCY_CLASSES]
        if unknown:
            raise ValueError(f"unknown frequency classes: {', '.join(unknown)}")
        return value

    @field_validator("sizes")
    @classmethod
    def _positive_sizes(cls, value: list[int]) -> list[int]:
        if any(s < 1 for s in value):
            raise ValueError("query sizes must be positive")
        return value


class RunConfig(BaseModel):
    """Resolved command line invocation."""

    command: str = Field(..., description="Subcommand name")
    corpus: str | None = Field(None, description="Bracketed corpus path")
    data: str | None = Field(None, description="Data file path")
    index: str | None = Field(None, description="Index file path")
    scheme: str | None = Field(None, description="Coding scheme")
    mss: int | None = Field(None, ge=1, description="Maximum subtree size")
    query: str | None = Field(None, description="Query text or file of queries")
    explain: bool = Field(False, description="Print cover and predicates")
    count: bool = Field(False, description="Print only the cardinality")
    time: bool = Field(False, description="Print phase timings")
    oracle: bool = Field(False, description="Cross-check against the brute-force matcher")
