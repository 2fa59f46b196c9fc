from dataclasses import replace

from src.corpus.tree import ROOT_PARENT, ParseTree, TreeNode
from src.utils.errors import StructuralError


def number_nodes(tree: ParseTree) -> ParseTree:
    """Assign pre/post/level ranks by an iterative DFS.

    Children are visited in ascending node id order, which is the textual
    order of bracketed input. The returned tree has its nodes sorted by pre.

    Raises:
        StructuralError: no single root, a parent id that names no node, or a
            cycle in the parent links.
    """
    if not tree.nodes:
        return tree

    by_id: dict[int, TreeNode] = {}
    for node in tree.nodes:
        if node.node_id in by_id:
            raise StructuralError(f"tree {tree.tid}: duplicate node id {node.node_id}")
        by_id[node.node_id] = node

    roots = [n.node_id for n in tree.nodes if n.parent_id == ROOT_PARENT]
    if len(roots) != 1:
        raise StructuralError(f"tree {tree.tid}: expected exactly one root, found {len(roots)}")
    dangling = [n.node_id for n in tree.nodes if n.parent_id != ROOT_PARENT and n.parent_id not in by_id]
    if dangling:
        raise StructuralError(f"tree {tree.tid}: node {dangling[0]} has an unknown parent")

    children = tree.children
    pre: dict[int, int] = {}
    post: dict[int, int] = {}
    level: dict[int, int] = {}
    pre_counter = post_counter = 0

    # (node id, depth, index of next child to visit)
    stack: list[tuple[int, int, int]] = [(roots[0], 0, 0)]
    while stack:
        node_id, depth, next_child = stack.pop()
        if next_child == 0:
            pre_counter += 1
            pre[node_id] = pre_counter
            level[node_id] = depth
        kids = children[node_id]
        if next_child < len(kids):
            stack.append((node_id, depth, next_child + 1))
            stack.append((kids[next_child], depth + 1, 0))
        else:
            post_counter += 1
            post[node_id] = post_counter

    if len(pre) != len(tree.nodes):
        # Nodes on a parent cycle are never reached from the root
        unreached = sorted(set(by_id) - set(pre))
        raise StructuralError(f"tree {tree.tid}: cycle in parent links through node {unreached[0]}")

    numbered = [replace(n, pre=pre[n.node_id], post=post[n.node_id], level=level[n.node_id]) for n in tree.nodes]
    numbered.sort(key=lambda n: n.pre)
    return ParseTree(tid=tree.tid, nodes=tuple(numbered))
