"""Structural merge joins over binding streams sorted by tid.

Within one tid both inputs are sorted by the pre rank of their join node.
Ancestor/descendant candidates of an upper node ``a`` are exactly the lower
nodes with ``pre`` in ``(pre_a, pre_a + desc_a]``; since upper nodes arrive in
ascending pre order, the start of that window only moves forward.
"""

from collections.abc import Iterable, Iterator, Sequence
from itertools import groupby

from src.decompose.planner import JoinPredicate, PredicateKind
from src.execution.bindings import NodeBindingTuple, Triple
from src.utils.errors import UnsortedStreamError


def relation_holds(kind: PredicateKind, upper: Triple, lower: Triple) -> bool:
    """Interval test of ``kind`` between two bound data nodes."""
    if kind is PredicateKind.SAME_NODE:
        return upper == lower
    if kind is PredicateKind.DISTINCT:
        return upper != lower
    descendant = upper[0] < lower[0] and lower[1] < upper[1]
    if kind is PredicateKind.ANCESTOR_DESCENDANT:
        return descendant
    return descendant and lower[2] == upper[2] + 1


def predicate_holds(predicate: JoinPredicate, bindings: dict[int, Triple]) -> bool:
    """True when either node is unbound or the relation holds."""
    upper = bindings.get(predicate.left_node)
    lower = bindings.get(predicate.right_node)
    if upper is None or lower is None:
        return True
    return relation_holds(predicate.kind, upper, lower)


def merge_bindings(a: dict[int, Triple], b: dict[int, Triple]) -> dict[int, Triple] | None:
    """Union of two binding maps, or None when a shared query node disagrees."""
    small, large = (a, b) if len(a) <= len(b) else (b, a)
    for node, triple in small.items():
        other = large.get(node)
        if other is not None and other != triple:
            return None
    return {**a, **b}


def _checked(stream: Iterable[NodeBindingTuple], side: str) -> Iterator[NodeBindingTuple]:
    previous = -1
    for item in stream:
        if item.tid < previous:
            raise UnsortedStreamError(f"{side} input goes back from tid {previous} to {item.tid}")
        previous = item.tid
        yield item


def _tid_groups(
    left: Iterable[NodeBindingTuple], right: Iterable[NodeBindingTuple]
) -> Iterator[tuple[int, list[NodeBindingTuple], list[NodeBindingTuple]]]:
    """Tid groups present on both sides, in ascending tid order."""
    lefts = groupby(_checked(left, "left"), key=lambda t: t.tid)
    rights = groupby(_checked(right, "right"), key=lambda t: t.tid)
    lg = next(lefts, None)
    rg = next(rights, None)
    while lg is not None and rg is not None:
        if lg[0] == rg[0]:
            yield lg[0], list(lg[1]), list(rg[1])
            lg = next(lefts, None)
            rg = next(rights, None)
        elif lg[0] < rg[0]:
            lg = next(lefts, None)
        else:
            rg = next(rights, None)


def _emit(
    tid: int,
    a: NodeBindingTuple,
    b: NodeBindingTuple,
    filters: Sequence[JoinPredicate],
) -> NodeBindingTuple | None:
    merged = merge_bindings(a.bindings, b.bindings)
    if merged is None:
        return None
    if not all(predicate_holds(f, merged) for f in filters):
        return None
    return NodeBindingTuple(tid, merged)


def _orient(
    predicate: JoinPredicate, left: NodeBindingTuple, right: NodeBindingTuple
) -> bool:
    """True when the left input binds the predicate's upper node."""
    if predicate.left_node in left.bindings and predicate.right_node in right.bindings:
        return True
    if predicate.left_node in right.bindings and predicate.right_node in left.bindings:
        return False
    raise ValueError(f"predicate {predicate.describe()} does not link the two inputs")


def _join_group(
    tid: int,
    left: list[NodeBindingTuple],
    right: list[NodeBindingTuple],
    predicate: JoinPredicate,
    filters: Sequence[JoinPredicate],
) -> Iterator[NodeBindingTuple]:
    if _orient(predicate, left[0], right[0]):
        upper, lower = left, right
    else:
        upper, lower = right, left
    up_node, low_node = predicate.left_node, predicate.right_node
    upper = sorted(upper, key=lambda t: t.bindings[up_node])
    lower = sorted(lower, key=lambda t: t.bindings[low_node])

    if predicate.kind is PredicateKind.DISTINCT:
        for a in upper:
            for b in lower:
                if relation_holds(predicate.kind, a.bindings[up_node], b.bindings[low_node]):
                    out = _emit(tid, a, b, filters)
                    if out is not None:
                        yield out
        return

    if predicate.kind is PredicateKind.SAME_NODE:
        j = 0
        for a in upper:
            key = a.bindings[up_node]
            while j < len(lower) and lower[j].bindings[low_node] < key:
                j += 1
            k = j
            while k < len(lower) and lower[k].bindings[low_node] == key:
                out = _emit(tid, a, lower[k], filters)
                if out is not None:
                    yield out
                k += 1
        return

    start = 0
    for a in upper:
        pre, post, level = a.bindings[up_node]
        last = pre + (post - pre + level)
        while start < len(lower) and lower[start].bindings[low_node][0] <= pre:
            start += 1
        k = start
        while k < len(lower) and lower[k].bindings[low_node][0] <= last:
            b = lower[k]
            if relation_holds(predicate.kind, a.bindings[up_node], b.bindings[low_node]):
                out = _emit(tid, a, b, filters)
                if out is not None:
                    yield out
            k += 1


def structural_merge_join(
    left: Iterable[NodeBindingTuple],
    right: Iterable[NodeBindingTuple],
    predicate: JoinPredicate,
    filters: Sequence[JoinPredicate] = (),
) -> Iterator[NodeBindingTuple]:
    """Join two tid-sorted binding streams on ``predicate``.

    Output stays sorted by tid. ``filters`` are further predicates checked on
    each joined tuple, and shared query nodes must be bound identically on
    both sides.

    Raises:
        UnsortedStreamError: an input is not sorted by tid.
    """
    for tid, left_group, right_group in _tid_groups(left, right):
        yield from _join_group(tid, left_group, right_group, predicate, filters)


def nested_loop_join(
    left: Iterable[NodeBindingTuple],
    right: Iterable[NodeBindingTuple],
    predicate: JoinPredicate,
    filters: Sequence[JoinPredicate] = (),
) -> list[NodeBindingTuple]:
    """Reference join comparing every pair of tuples."""
    right_items = list(right)
    out: list[NodeBindingTuple] = []
    for a in left:
        for b in right_items:
            if a.tid != b.tid:
                continue
            merged = merge_bindings(a.bindings, b.bindings)
            if merged is None or not predicate_holds(predicate, merged):
                continue
            if all(predicate_holds(f, merged) for f in filters):
                out.append(NodeBindingTuple(a.tid, merged))
    return out
