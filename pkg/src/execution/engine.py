import time
from dataclasses import dataclass, field
from pathlib import Path

from src.corpus.datafile import DataFileReader
from src.decompose.planner import JoinPlan, JoinPredicate, PredicateKind, plan_query
from src.execution.bindings import MatchSet, NodeBindingTuple, leaf_tuples
from src.execution.merge_join import structural_merge_join
from src.execution.oracle import oracle_match
from src.index.reader import SubtreeIndex
from src.index.scheme import CodingScheme
from src.models.records import PhaseTimings
from src.query.layout import QueryTree
from src.query.nodes import QueryNode
from src.query.parser import parse_query
from src.utils.errors import MissingDataFileError, SchemeMismatchError
from src.utils.logger import logger

_PRIMARY_ORDER = {
    PredicateKind.SAME_NODE: 0,
    PredicateKind.PARENT_CHILD: 1,
    PredicateKind.ANCESTOR_DESCENDANT: 2,
    PredicateKind.DISTINCT: 3,
}


@dataclass
class QueryResult:
    matches: MatchSet
    plan: JoinPlan
    timings: PhaseTimings = field(default_factory=PhaseTimings)
    candidates: int | None = None

    @property
    def joins(self) -> int:
        return max(len(self.plan.leaves) - 1, 0)


def _check_plan(plan: JoinPlan, index: SubtreeIndex) -> None:
    if plan.scheme is not index.scheme or plan.mss != index.mss:
        raise SchemeMismatchError(
            f"plan is {plan.scheme.value}/mss={plan.mss} but index {index.path} is {index.scheme.value}/mss={index.mss}"
        )


def _split_predicates(predicates: list[JoinPredicate]) -> tuple[JoinPredicate, list[JoinPredicate]]:
    ordered = sorted(predicates, key=lambda p: _PRIMARY_ORDER[p.kind])
    return ordered[0], ordered[1:]


def _run_filter_based(
    plan: JoinPlan, index: SubtreeIndex, data: DataFileReader | None, timings: PhaseTimings
) -> tuple[MatchSet, int]:
    if data is None:
        raise MissingDataFileError("filter-based execution needs the data file to verify candidate trees")

    started = time.perf_counter()
    tid_lists = [index.lookup_shape(leaf.subtree.shape).tids() for leaf in plan.leaves]
    timings.fetch += time.perf_counter() - started

    started = time.perf_counter()
    tid_lists.sort(key=len)
    candidates = set(tid_lists[0]) if tid_lists else set()
    for tids in tid_lists[1:]:
        if not candidates:
            break
        candidates.intersection_update(tids)
    timings.join += time.perf_counter() - started

    started = time.perf_counter()
    matches = MatchSet()
    for tid in sorted(candidates):
        matches.update(oracle_match(plan.query, data.read_tree(tid)))
    timings.filter += time.perf_counter() - started
    return matches, len(candidates)


def _run_joins(plan: JoinPlan, index: SubtreeIndex, timings: PhaseTimings) -> MatchSet:
    started = time.perf_counter()
    streams: dict[int, list[NodeBindingTuple]] = {}
    for i, leaf in enumerate(plan.leaves):
        streams[i] = list(leaf_tuples(leaf, index.lookup_shape(leaf.subtree.shape)))
        if not streams[i]:
            timings.fetch += time.perf_counter() - started
            return MatchSet()
    timings.fetch += time.perf_counter() - started

    started = time.perf_counter()
    first = plan.order[0]
    current = streams[first]
    joined = {first}
    for leaf in plan.order[1:]:
        primary, filters = _split_predicates(plan.predicates_between(joined, leaf))
        current = list(structural_merge_join(current, streams[leaf], primary, filters))
        joined.add(leaf)
        if not current:
            break
    matches = MatchSet(t.root_binding(0) for t in current)
    timings.join += time.perf_counter() - started
    return matches


def execute_plan(
    plan: JoinPlan,
    index: SubtreeIndex,
    data: DataFileReader | None = None,
    timings: PhaseTimings | None = None,
) -> MatchSet:
    """Run ``plan`` against ``index``.

    Filter-based plans intersect tid lists and verify every candidate tree
    from ``data``; the other schemes join postings without touching the trees.

    Raises:
        SchemeMismatchError: the plan was built for another scheme or mss.
        MissingDataFileError: a filter-based plan without a data file.
    """
    _check_plan(plan, index)
    timings = timings if timings is not None else PhaseTimings()
    if plan.scheme is CodingScheme.FILTER_BASED:
        matches, _ = _run_filter_based(plan, index, data, timings)
        return matches
    return _run_joins(plan, index, timings)


class QueryEngine:
    """Plans and runs queries against one index (and optionally its data file).

    Args:
        index: Open index, or a path to one
        data: Data file reader or path; required for filter-based indexes

    """

    def __init__(self, index: SubtreeIndex | str | Path, data: DataFileReader | str | Path | None = None):
        self.index = index if isinstance(index, SubtreeIndex) else SubtreeIndex.open(index)
        self.data = data if data is None or isinstance(data, DataFileReader) else DataFileReader(data)

    def plan(self, query: str | QueryNode | QueryTree) -> JoinPlan:
        q = parse_query(query) if isinstance(query, str) else query
        return plan_query(q, self.index.mss, self.index.scheme, estimator=self.index.shape_posting_count)

    def execute(
        self,
        query: str | QueryNode | QueryTree,
        scheme: CodingScheme | str | None = None,
        mss: int | None = None,
    ) -> QueryResult:
        """Plan and run one query.

        ``scheme`` and ``mss``, when given, must match the index header.
        """
        if scheme is not None and CodingScheme.parse(scheme) is not self.index.scheme:
            raise SchemeMismatchError(f"expected a {scheme} index, {self.index.path} is {self.index.scheme.value}")
        if mss is not None and mss != self.index.mss:
            raise SchemeMismatchError(f"expected mss={mss}, {self.index.path} was built with mss={self.index.mss}")

        timings = PhaseTimings()
        started = time.perf_counter()
        plan = self.plan(query)
        timings.decompose = time.perf_counter() - started

        candidates: int | None = None
        if plan.scheme is CodingScheme.FILTER_BASED:
            matches, candidates = _run_filter_based(plan, self.index, self.data, timings)
        else:
            matches = _run_joins(plan, self.index, timings)
        logger.debug(
            f"{plan.query.render()}: {len(matches)} matches, {len(plan.leaves)} leaves, {timings.total * 1000:.2f} ms"
        )
        return QueryResult(matches=matches, plan=plan, timings=timings, candidates=candidates)

    def close(self) -> None:
        self.index.close()
        if self.data is not None:
            self.data.close()
