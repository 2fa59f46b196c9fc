from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property

ROOT_PARENT = -1


@dataclass(frozen=True, slots=True)
class TreeNode:
    """One node of a parse tree with its interval numbers.

    ``pre``/``post`` are 1-based DFS visit ranks local to the tree and
    ``level`` is the depth (root = 0). They stay 0 until the tree is numbered.
    """

    node_id: int
    parent_id: int
    label: str
    pre: int = 0
    post: int = 0
    level: int = 0

    @property
    def desc(self) -> int:
        """Number of proper descendants."""
        return self.post - self.pre + self.level

    def is_ancestor_of(self, other: "TreeNode") -> bool:
        return self.pre < other.pre and other.post < self.post

    def is_parent_of(self, other: "TreeNode") -> bool:
        return self.is_ancestor_of(other) and other.level == self.level + 1


@dataclass(frozen=True)
class ParseTree:
    """A labeled rooted tree identified by ``tid``.

    A numbered tree keeps ``nodes`` sorted by pre rank, so ``nodes[p - 1]``
    is the node with pre rank ``p``.
    """

    tid: int
    nodes: tuple[TreeNode, ...]

    @property
    def size(self) -> int:
        return len(self.nodes)

    def __len__(self) -> int:
        return len(self.nodes)

    def __iter__(self) -> Iterator[TreeNode]:
        return iter(self.nodes)

    @property
    def numbered(self) -> bool:
        return bool(self.nodes) and all(n.pre == i for i, n in enumerate(self.nodes, start=1))

    @cached_property
    def by_id(self) -> dict[int, TreeNode]:
        return {n.node_id: n for n in self.nodes}

    @cached_property
    def children(self) -> dict[int, list[int]]:
        """Child node ids per node id, in ascending id (textual) order."""
        kids: dict[int, list[int]] = {n.node_id: [] for n in self.nodes}
        for n in self.nodes:
            if n.parent_id != ROOT_PARENT and n.parent_id in kids:
                kids[n.parent_id].append(n.node_id)
        for ids in kids.values():
            ids.sort()
        return kids

    @cached_property
    def root(self) -> TreeNode:
        roots = [n for n in self.nodes if n.parent_id == ROOT_PARENT]
        return roots[0]

    @cached_property
    def labels(self) -> frozenset[str]:
        return frozenset(n.label for n in self.nodes)

    def node_at(self, pre: int) -> TreeNode:
        """Node with the given pre rank (numbered trees only)."""
        return self.nodes[pre - 1]

    def descendants(self, node: TreeNode) -> Sequence[TreeNode]:
        """Proper descendants of ``node`` in pre order (numbered trees only)."""
        return self.nodes[node.pre : node.pre + node.desc]


@dataclass
class Corpus:
    """Trees ordered by tid plus the label alphabet they use."""

    trees: list[ParseTree] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.trees)

    def __iter__(self) -> Iterator[ParseTree]:
        return iter(self.trees)

    @property
    def label_alphabet(self) -> frozenset[str]:
        labels: set[str] = set()
        for tree in self.trees:
            labels.update(tree.labels)
        return frozenset(labels)

    @property
    def node_count(self) -> int:
        return sum(t.size for t in self.trees)

    def by_tid(self) -> dict[int, ParseTree]:
        return {t.tid: t for t in self.trees}
