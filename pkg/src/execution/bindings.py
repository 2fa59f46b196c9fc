from collections.abc import Iterable, Iterator
from typing import NamedTuple

from src.decompose.planner import PlanLeaf
from src.index.postings import IntervalPosting, Posting, RootSplitPosting
from src.query.nodes import MatchBinding
from src.subtrees.embedding import automorphisms

Triple = tuple[int, int, int]


class NodeBindingTuple(NamedTuple):
    """Partial embedding inside one tree: query node id -> (pre, post, level)."""

    tid: int
    bindings: dict[int, Triple]

    def root_binding(self, node: int = 0) -> MatchBinding:
        pre, post, level = self.bindings[node]
        return MatchBinding(self.tid, pre, post, level)


def leaf_tuples(leaf: PlanLeaf, postings: Iterable[Posting]) -> Iterator[NodeBindingTuple]:
    """Bindings contributed by one leaf's postings, in tid order.

    Interval postings bind every piece node, once per automorphism of the
    piece shape; root-split postings bind only the piece root.
    """
    anchors = leaf.subtree.anchors
    perms = automorphisms(leaf.subtree.shape)
    for posting in postings:
        match posting:
            case RootSplitPosting(tid, l, r, v):
                yield NodeBindingTuple(tid, {anchors[0]: (l, r, v)})
            case IntervalPosting(tid, nodes):
                for perm in perms:
                    bindings: dict[int, Triple] = {}
                    for i, node in enumerate(anchors):
                        target = nodes[perm[i]]
                        bindings[node] = (target.l, target.r, target.v)
                    yield NodeBindingTuple(tid, bindings)
            case _:
                raise TypeError(f"{type(posting).__name__} carries no structural bindings")


class MatchSet:
    """Distinct query-root bindings, iterated in (tid, pre) order."""

    def __init__(self, bindings: Iterable[MatchBinding] = ()):
        self._bindings: set[MatchBinding] = set(bindings)

    def add(self, binding: MatchBinding) -> None:
        self._bindings.add(binding)

    def update(self, bindings: Iterable[MatchBinding]) -> None:
        self._bindings.update(bindings)

    def __len__(self) -> int:
        return len(self._bindings)

    def __iter__(self) -> Iterator[MatchBinding]:
        return iter(sorted(self._bindings))

    def __contains__(self, binding: object) -> bool:
        return binding in self._bindings

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MatchSet):
            return self._bindings == other._bindings
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._bindings))

    def __repr__(self) -> str:
        return f"MatchSet({len(self._bindings)} bindings)"

    def tids(self) -> list[int]:
        return sorted({b.tid for b in self._bindings})

    def lines(self) -> list[str]:
        """``tid<TAB>pre<TAB>post<TAB>level`` per binding, sorted."""
        return [b.line() for b in self]

    def difference(self, other: "MatchSet") -> "MatchSet":
        return MatchSet(self._bindings - other._bindings)
