from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from enum import StrEnum

from src.query.layout import QueryTree
from src.subtrees.shape import SubtreeShape, sort_key


class CoverKind(StrEnum):
    NODE_COVER = "node-cover"
    FULL_COVER = "full-cover"
    ROOT_SPLIT = "root-split"


@dataclass(frozen=True, slots=True)
class CoverSubtree:
    """A connected ``/``-only piece of a query.

    ``anchors[i]`` is the query node id of the i-th node in the canonical
    pre-order of ``shape``; ``anchors[0]`` is the piece root.
    """

    shape: SubtreeShape
    anchors: tuple[int, ...]

    @classmethod
    def from_nodes(cls, tree: QueryTree, nodes: Iterable[int]) -> "CoverSubtree":
        members = frozenset(nodes)
        root = min(members)

        def _build(node: int) -> tuple[SubtreeShape, tuple[int, ...]]:
            parts = sorted(
                (_build(c) for c in tree.child_children(node) if c in members),
                key=lambda part: sort_key(part[0]),
            )
            shape = SubtreeShape(tree.labels[node], tuple(p[0] for p in parts))
            return shape, (node, *(a for p in parts for a in p[1]))

        shape, anchors = _build(root)
        if len(anchors) != len(members):
            raise ValueError(f"nodes {sorted(members)} do not form a connected /-subtree of the query")
        return cls(shape, anchors)

    @property
    def root(self) -> int:
        return self.anchors[0]

    @property
    def nodes(self) -> frozenset[int]:
        return frozenset(self.anchors)

    @property
    def size(self) -> int:
        return len(self.anchors)

    @property
    def text(self) -> str:
        return self.shape.render()

    def position_of(self, node: int) -> int:
        """Index of query node ``node`` in the canonical pre-order of the piece."""
        return self.anchors.index(node)

    def edges(self, tree: QueryTree) -> set[tuple[int, int]]:
        """Query edges (parent, child) lying inside the piece."""
        return {(tree.parents[n], n) for n in self.anchors[1:]}


@dataclass(frozen=True)
class Cover:
    subtrees: tuple[CoverSubtree, ...]
    kind: CoverKind = CoverKind.NODE_COVER

    def __len__(self) -> int:
        return len(self.subtrees)

    def __iter__(self) -> Iterator[CoverSubtree]:
        return iter(self.subtrees)

    def texts(self) -> list[str]:
        return sorted(s.text for s in self.subtrees)

    def roots(self) -> set[int]:
        return {s.root for s in self.subtrees}

    def covered_nodes(self) -> set[int]:
        out: set[int] = set()
        for s in self.subtrees:
            out.update(s.anchors)
        return out
