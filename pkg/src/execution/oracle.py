from collections.abc import Iterable

from src.corpus.tree import ParseTree, TreeNode
from src.decompose.builder import as_query_tree
from src.execution.bindings import MatchSet
from src.query.layout import QueryTree
from src.query.nodes import EdgeType, MatchBinding, QueryNode


def _embeds(tree: ParseTree, q: QueryTree, root: TreeNode) -> bool:
    """Injective, label- and axis-preserving embedding with the query root on ``root``."""
    assignment: list[TreeNode | None] = [None] * q.size
    assignment[0] = root
    used = {root.pre}

    def _candidates(i: int) -> Iterable[TreeNode]:
        parent = assignment[q.parents[i]]
        assert parent is not None
        if q.axes[i] is EdgeType.CHILD:
            pool: Iterable[TreeNode] = (tree.by_id[c] for c in tree.children[parent.node_id])
        else:
            pool = tree.descendants(parent)
        label = q.labels[i]
        return [n for n in pool if n.label == label]

    def _extend(i: int) -> bool:
        if i == q.size:
            return True
        for node in _candidates(i):
            if node.pre in used:
                continue
            assignment[i] = node
            used.add(node.pre)
            if _extend(i + 1):
                return True
            used.discard(node.pre)
        assignment[i] = None
        return False

    return _extend(1)


def oracle_match(q: QueryNode | QueryTree, tree: ParseTree) -> MatchSet:
    """Every data node of ``tree`` the query root can be bound to, by exhaustive search."""
    layout = as_query_tree(q)
    matches = MatchSet()
    root_label = layout.labels[0]
    for node in tree.nodes:
        if node.label == root_label and _embeds(tree, layout, node):
            matches.add(MatchBinding(tree.tid, node.pre, node.post, node.level))
    return matches


def oracle_union(q: QueryNode | QueryTree, trees: Iterable[ParseTree]) -> MatchSet:
    """``oracle_match`` over a whole corpus."""
    layout = as_query_tree(q)
    matches = MatchSet()
    for tree in trees:
        if layout.labels[0] in tree.labels:
            matches.update(oracle_match(layout, tree))
    return matches
