"""Cover construction over the ``/``-connected regions of a query.

The remainder R(c) of a node is c plus the remainders of its ``/`` children
that are neither packed into a piece nor fully covered. A node becomes
covered only as the root of an ``assign`` call, inside a packed remainder,
or inside a whole child of exactly ``mss`` nodes; filler nodes added to
reach ``mss`` leave coverage unchanged.
"""

from collections.abc import Iterable

from src.config.settings import check_mss
from src.decompose.cover import Cover, CoverKind, CoverSubtree
from src.query.layout import QueryTree
from src.query.nodes import QueryNode


def as_query_tree(q: QueryNode | QueryTree) -> QueryTree:
    return q if isinstance(q, QueryTree) else QueryTree.from_query(q)


class CoverBuilder:
    """Stateful cover construction for one query.

    Args:
        tree: Canonical query layout
        mss: Largest piece size
        pinned: Query nodes that must become piece roots in ``min_rc``

    """

    def __init__(self, tree: QueryTree, mss: int, pinned: Iterable[int] = ()):
        self.tree = tree
        self.mss = check_mss(mss)
        self.pinned = frozenset(pinned)
        self.covered: set[int] = set()
        self.packed: set[int] = set()
        self.pieces: list[frozenset[int]] = []

    # -- remainder bookkeeping -------------------------------------------------

    def remainder(self, node: int) -> list[int]:
        """R(node) in pre order."""
        nodes = [node]
        for child in self.tree.child_children(node):
            if child in self.packed:
                continue
            rest = self.remainder(child)
            if self._has_uncovered(rest):
                nodes.extend(rest)
        return nodes

    def _has_uncovered(self, nodes: Iterable[int]) -> bool:
        return any(n not in self.covered for n in nodes)

    def _live_children(self, node: int) -> list[tuple[int, list[int]]]:
        live: list[tuple[int, list[int]]] = []
        for child in self.tree.child_children(node):
            if child in self.packed:
                continue
            rest = self.remainder(child)
            if self._has_uncovered(rest):
                live.append((child, rest))
        return live

    def _piece_count(self, node: int) -> int:
        return sum(1 for piece in self.pieces if node in piece)

    def _has_pinned_below(self, node: int) -> bool:
        region = self.tree.region_of[node]
        return any(
            d in self.pinned and self.tree.region_of[d] == region
            for d in self.tree.subtree_nodes(node)
            if d != node
        )

    # -- piece construction ----------------------------------------------------

    def _whole(self, child: int) -> frozenset[int]:
        nodes = frozenset(self.remainder(child))
        self.pieces.append(nodes)
        self.packed.add(child)
        self.covered.update(nodes)
        return nodes

    def assign(self, node: int) -> frozenset[int]:
        """Build one piece rooted at ``node``.

        Live children are packed largest remainder first (ties in canonical
        order) while they fit; the piece is then topped up to ``mss`` nodes
        from its frontier, preferring nodes in the fewest existing pieces,
        then the smallest query subtree, then the latest canonical position.
        """
        self.covered.add(node)
        piece = [node]
        candidates = sorted(self._live_children(node), key=lambda item: (-len(item[1]), item[0]))
        for child, rest in candidates:
            if len(piece) == self.mss:
                break
            if len(piece) + len(rest) <= self.mss:
                piece.extend(rest)
                self.packed.add(child)
                self.covered.update(rest)

        members = set(piece)
        while len(members) < self.mss:
            frontier = [c for n in members for c in self.tree.child_children(n) if c not in members]
            if not frontier:
                break
            members.add(min(frontier, key=lambda c: (self._piece_count(c), self.tree.subtree_sizes[c], -c)))

        result = frozenset(members)
        self.pieces.append(result)
        return result

    def _optimal(self, node: int, region_root: bool) -> None:
        for child in self.tree.child_children(node):
            size = len(self.remainder(child))
            if size == self.mss:
                self._whole(child)
            elif size > self.mss:
                self._optimal(child, region_root=False)
        while len(rest := self.remainder(node)) >= self.mss and self._has_uncovered(rest):
            self.assign(node)
        if region_root and self._has_uncovered(self.remainder(node)):
            self.assign(node)

    def _min_rc(self, node: int) -> None:
        for child in self.tree.child_children(node):
            size = len(self.remainder(child))
            pinned_below = self._has_pinned_below(child)
            if size > self.mss or pinned_below or (child in self.pinned and size < self.mss):
                self._min_rc(child)
            elif size == self.mss:
                self._whole(child)
        while self._has_uncovered(self.remainder(node)):
            self.assign(node)

    # -- public entry points ---------------------------------------------------

    def _cover(self, kind: CoverKind) -> Cover:
        return Cover(tuple(CoverSubtree.from_nodes(self.tree, p) for p in self.pieces), kind)

    def optimal_cover(self, regions: Iterable[int] | None = None) -> Cover:
        """Join-optimal max-cover of every requested region (all regions by default)."""
        for root in self.tree.region_roots if regions is None else regions:
            self._optimal(root, region_root=True)
        kind = CoverKind.FULL_COVER if is_full_cover(self.tree, self.pieces) else CoverKind.NODE_COVER
        return self._cover(kind)

    def min_rc(self, regions: Iterable[int] | None = None) -> Cover:
        """Smallest anomaly-free root-split cover of every requested region."""
        for root in self.tree.region_roots if regions is None else regions:
            self._min_rc(root)
        return self._cover(CoverKind.ROOT_SPLIT)


def is_full_cover(tree: QueryTree, pieces: Iterable[Iterable[int]]) -> bool:
    """Every ``/`` edge of the query lies inside some piece."""
    inside: set[tuple[int, int]] = set()
    for piece in pieces:
        members = set(piece)
        inside.update((tree.parents[n], n) for n in members if tree.parents[n] in members)
    needed = {(tree.parents[i], i) for i in range(1, tree.size) if not tree.is_region_root(i)}
    return needed <= inside


def optimal_cover(q: QueryNode | QueryTree, mss: int) -> Cover:
    """Join-optimal cover of every ``/``-connected region of ``q``."""
    return CoverBuilder(as_query_tree(q), mss).optimal_cover()


def min_rc(q: QueryNode | QueryTree, mss: int, pinned: Iterable[int] = ()) -> Cover:
    """Minimal anomaly-free root-split cover of every region of ``q``."""
    return CoverBuilder(as_query_tree(q), mss, pinned).min_rc()


def assign(q: QueryNode | QueryTree, mss: int) -> CoverSubtree:
    """A single ``assign`` call at the query root on a fresh builder."""
    tree = as_query_tree(q)
    builder = CoverBuilder(tree, mss)
    return CoverSubtree.from_nodes(tree, builder.assign(0))
