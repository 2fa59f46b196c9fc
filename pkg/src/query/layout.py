from dataclasses import dataclass
from functools import cached_property

from src.query.nodes import EdgeType, QueryNode
from src.subtrees.shape import SubtreeShape


def canonical_query(q: QueryNode) -> QueryNode:
    """Sort children at every level by axis, label, then canonical rendering."""
    children = [(axis, canonical_query(child)) for axis, child in q.children]
    children.sort(key=lambda item: (item[0].value, item[1].label, item[1].render()))
    return QueryNode(q.label, tuple(children))


@dataclass(frozen=True)
class QueryTree:
    """Flat, canonically ordered view of a query.

    Node ids are canonical pre-order positions with the root at 0.
    ``axes[i]`` is the axis of the edge from ``parents[i]`` to ``i``
    (``None`` for the root).
    """

    query: QueryNode
    labels: tuple[str, ...]
    parents: tuple[int, ...]
    axes: tuple[EdgeType | None, ...]
    children: tuple[tuple[int, ...], ...]

    @classmethod
    def from_query(cls, q: QueryNode) -> "QueryTree":
        canonical = canonical_query(q)
        labels: list[str] = []
        parents: list[int] = []
        axes: list[EdgeType | None] = []
        children: list[list[int]] = []

        def _walk(node: QueryNode, parent: int, axis: EdgeType | None) -> None:
            me = len(labels)
            labels.append(node.label)
            parents.append(parent)
            axes.append(axis)
            children.append([])
            if parent >= 0:
                children[parent].append(me)
            for edge, child in node.children:
                _walk(child, me, edge)

        _walk(canonical, -1, None)
        return cls(
            query=canonical,
            labels=tuple(labels),
            parents=tuple(parents),
            axes=tuple(axes),
            children=tuple(tuple(c) for c in children),
        )

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    @cached_property
    def subtree_sizes(self) -> tuple[int, ...]:
        sizes = [1] * self.size
        for i in reversed(range(1, self.size)):
            sizes[self.parents[i]] += sizes[i]
        return tuple(sizes)

    def child_children(self, i: int) -> tuple[int, ...]:
        """Children of ``i`` reached by ``/`` edges."""
        return tuple(c for c in self.children[i] if self.axes[c] is EdgeType.CHILD)

    def descendant_children(self, i: int) -> tuple[int, ...]:
        """Children of ``i`` reached by ``//`` edges."""
        return tuple(c for c in self.children[i] if self.axes[c] is EdgeType.DESCENDANT)

    def is_region_root(self, i: int) -> bool:
        return i == 0 or self.axes[i] is EdgeType.DESCENDANT

    @cached_property
    def region_of(self) -> tuple[int, ...]:
        """Root of the ``/``-connected region containing each node."""
        region = [0] * self.size
        for i in range(1, self.size):
            region[i] = i if self.is_region_root(i) else region[self.parents[i]]
        return tuple(region)

    @cached_property
    def region_roots(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.size) if self.is_region_root(i))

    def region_nodes(self, root: int) -> tuple[int, ...]:
        return tuple(i for i in range(self.size) if self.region_of[i] == root)

    def subtree_nodes(self, i: int) -> range:
        """Node ids of the query subtree rooted at ``i`` (contiguous in pre order)."""
        return range(i, i + self.subtree_sizes[i])

    def is_ancestor(self, a: int, d: int) -> bool:
        return a < d < a + self.subtree_sizes[a]

    def render(self, i: int = 0) -> str:
        parts = [self.labels[i]]
        for c in self.children[i]:
            prefix = "//" if self.axes[c] is EdgeType.DESCENDANT else ""
            parts.append(f"({prefix}{self.render(c)})")
        return "".join(parts)

    def region_shape(self, i: int) -> SubtreeShape:
        """Shape of the ``/``-only part of the subtree rooted at ``i``."""
        return SubtreeShape(self.labels[i], tuple(self.region_shape(c) for c in self.child_children(i)))

    @cached_property
    def label_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for label in self.labels:
            counts[label] = counts.get(label, 0) + 1
        return counts
