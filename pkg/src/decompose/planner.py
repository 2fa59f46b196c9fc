from collections.abc import Callable
from dataclasses import dataclass
from enum import StrEnum
from itertools import combinations
from typing import NamedTuple

from src.config.settings import check_mss
from src.decompose.builder import CoverBuilder, as_query_tree
from src.decompose.cover import Cover, CoverSubtree
from src.index.scheme import CodingScheme
from src.query.layout import QueryTree
from src.query.nodes import EdgeType, QueryNode
from src.subtrees.shape import SubtreeShape

Estimator = Callable[[SubtreeShape], int]


class PredicateKind(StrEnum):
    SAME_NODE = "same-node"
    PARENT_CHILD = "parent-child"
    ANCESTOR_DESCENDANT = "ancestor-descendant"
    DISTINCT = "distinct"


class LeafRef(NamedTuple):
    leaf: int
    node_idx: int


class JoinPredicate(NamedTuple):
    """A condition between two leaf nodes; for structural kinds ``left`` is the upper node."""

    kind: PredicateKind
    left: LeafRef
    right: LeafRef
    left_node: int
    right_node: int

    def describe(self) -> str:
        symbol = {
            PredicateKind.SAME_NODE: "=",
            PredicateKind.PARENT_CHILD: "/",
            PredicateKind.ANCESTOR_DESCENDANT: "//",
            PredicateKind.DISTINCT: "!=",
        }[self.kind]
        return (
            f"{self.kind.value}: L{self.left.leaf}.{self.left.node_idx} {symbol} "
            f"L{self.right.leaf}.{self.right.node_idx} (query nodes {self.left_node}, {self.right_node})"
        )


class PlanLeaf(NamedTuple):
    """A cover piece looked up in the index; ``bound`` lists the query nodes its postings bind."""

    subtree: CoverSubtree
    bound: tuple[int, ...]
    estimate: int


@dataclass(frozen=True)
class JoinPlan:
    query: QueryTree
    mss: int
    scheme: CodingScheme
    cover: Cover
    leaves: tuple[PlanLeaf, ...]
    predicates: tuple[JoinPredicate, ...]
    order: tuple[int, ...]

    def predicates_between(self, joined: set[int], leaf: int) -> list[JoinPredicate]:
        """Predicates linking ``leaf`` with any leaf in ``joined``."""
        return [
            p
            for p in self.predicates
            if (p.left.leaf == leaf and p.right.leaf in joined) or (p.right.leaf == leaf and p.left.leaf in joined)
        ]

    def explain(self) -> list[str]:
        lines = [f"query: {self.query.render()}  scheme={self.scheme.value} mss={self.mss}"]
        lines.append(f"cover ({self.cover.kind.value}, {len(self.cover)} subtrees): {', '.join(self.cover.texts())}")
        for i, leaf in enumerate(self.leaves):
            lines.append(
                f"  L{i}: {leaf.subtree.text}  anchors={list(leaf.subtree.anchors)} postings~{leaf.estimate}"
            )
        for predicate in self.predicates:
            lines.append(f"  {predicate.describe()}")
        lines.append(f"order: {' -> '.join(f'L{i}' for i in self.order)}  joins={count_joins(self)}")
        return lines


def count_joins(plan: JoinPlan) -> int:
    """Binary joins of the left-deep plan."""
    return max(len(plan.leaves) - 1, 0)


def root_split_pins(tree: QueryTree) -> set[int]:
    """Nodes that must be piece roots for root-only joins to stay exact."""
    pinned = {i for i, label in enumerate(tree.labels) if tree.label_counts[label] > 1}
    pinned.update(i for i in range(tree.size) if tree.descendant_children(i))
    return pinned


def _first_leaf(leaves: list[PlanLeaf], node: int) -> int:
    return next(i for i, leaf in enumerate(leaves) if node in leaf.bound)


def _interval_predicates(tree: QueryTree, leaves: list[PlanLeaf]) -> list[JoinPredicate]:
    predicates: list[JoinPredicate] = []

    def ref(leaf: int, node: int) -> LeafRef:
        return LeafRef(leaf, leaves[leaf].subtree.position_of(node))

    for node in range(tree.size):
        holders = [i for i, leaf in enumerate(leaves) if node in leaf.bound]
        for other in holders[1:]:
            predicates.append(
                JoinPredicate(PredicateKind.SAME_NODE, ref(holders[0], node), ref(other, node), node, node)
            )

    for child in range(1, tree.size):
        parent = tree.parents[child]
        if tree.axes[child] is EdgeType.DESCENDANT:
            kind = PredicateKind.ANCESTOR_DESCENDANT
        elif any(parent in leaf.bound and child in leaf.bound for leaf in leaves):
            continue
        else:
            kind = PredicateKind.PARENT_CHILD
        up, down = _first_leaf(leaves, parent), _first_leaf(leaves, child)
        predicates.append(JoinPredicate(kind, ref(up, parent), ref(down, child), parent, child))

    for x, y in combinations(range(tree.size), 2):
        if tree.labels[x] != tree.labels[y]:
            continue
        if any(x in leaf.bound and y in leaf.bound for leaf in leaves):
            continue
        a, b = _first_leaf(leaves, x), _first_leaf(leaves, y)
        predicates.append(JoinPredicate(PredicateKind.DISTINCT, ref(a, x), ref(b, y), x, y))
    return predicates


def _root_split_predicates(tree: QueryTree, leaves: list[PlanLeaf]) -> list[JoinPredicate]:
    predicates: list[JoinPredicate] = []
    by_root: dict[int, list[int]] = {}
    for i, leaf in enumerate(leaves):
        by_root.setdefault(leaf.subtree.root, []).append(i)

    for root, holders in sorted(by_root.items()):
        for other in holders[1:]:
            predicates.append(
                JoinPredicate(PredicateKind.SAME_NODE, LeafRef(holders[0], 0), LeafRef(other, 0), root, root)
            )

    for root in sorted(by_root):
        parent = tree.parents[root]
        if parent < 0:
            continue
        kind = (
            PredicateKind.ANCESTOR_DESCENDANT
            if tree.axes[root] is EdgeType.DESCENDANT
            else PredicateKind.PARENT_CHILD
        )
        up, down = by_root[parent][0], by_root[root][0]
        predicates.append(JoinPredicate(kind, LeafRef(up, 0), LeafRef(down, 0), parent, root))

    for x, y in combinations(sorted(by_root), 2):
        if tree.labels[x] == tree.labels[y]:
            predicates.append(
                JoinPredicate(PredicateKind.DISTINCT, LeafRef(by_root[x][0], 0), LeafRef(by_root[y][0], 0), x, y)
            )
    return predicates


def _left_deep_order(leaves: list[PlanLeaf], predicates: list[JoinPredicate]) -> tuple[int, ...]:
    links: dict[int, set[int]] = {i: set() for i in range(len(leaves))}
    for p in predicates:
        if p.kind is not PredicateKind.DISTINCT:
            links[p.left.leaf].add(p.right.leaf)
            links[p.right.leaf].add(p.left.leaf)

    remaining = set(range(len(leaves)))
    order: list[int] = []
    while remaining:
        connected = [i for i in remaining if not order or links[i] & set(order)]
        pick = min(connected or remaining, key=lambda i: (leaves[i].estimate, i))
        order.append(pick)
        remaining.discard(pick)
    return tuple(order)


def plan_query(
    q: QueryNode | QueryTree,
    mss: int,
    scheme: CodingScheme | str,
    estimator: Estimator | None = None,
) -> JoinPlan:
    """Decompose ``q`` into index lookups and the predicates that join them.

    Args:
        q: Query to plan
        mss: Largest piece size; must match the index that will run the plan
        scheme: Coding scheme of that index
        estimator: Posting count of a piece shape, used to order the joins

    Returns:
        JoinPlan whose left-deep order starts at the smallest estimated leaf

    """
    tree = as_query_tree(q)
    check_mss(mss)
    scheme = CodingScheme.parse(scheme)

    if scheme is CodingScheme.ROOT_SPLIT:
        cover = CoverBuilder(tree, mss, root_split_pins(tree)).min_rc()
    else:
        cover = CoverBuilder(tree, mss).optimal_cover()

    leaves: list[PlanLeaf] = []
    for subtree in cover.subtrees:
        bound = (subtree.root,) if scheme is CodingScheme.ROOT_SPLIT else subtree.anchors
        estimate = estimator(subtree.shape) if estimator is not None else 0
        leaves.append(PlanLeaf(subtree, bound, estimate))

    if scheme is CodingScheme.ROOT_SPLIT:
        predicates = _root_split_predicates(tree, leaves)
    else:
        predicates = _interval_predicates(tree, leaves)

    return JoinPlan(
        query=tree,
        mss=mss,
        scheme=scheme,
        cover=cover,
        leaves=tuple(leaves),
        predicates=tuple(predicates),
        order=_left_deep_order(leaves, predicates),
    )
