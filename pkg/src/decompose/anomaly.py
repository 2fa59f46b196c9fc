from itertools import combinations
from typing import NamedTuple

from src.decompose.builder import as_query_tree
from src.decompose.cover import Cover
from src.query.layout import QueryTree
from src.query.nodes import QueryNode


class AnomalyWitness(NamedTuple):
    """Pieces ``i`` and ``j`` share non-root node ``v`` but hold different children ``u`` and ``u_prime`` of it."""

    i: int
    j: int
    v: int
    u: int
    u_prime: int


def detect_anomaly(cover: Cover, q: QueryNode | QueryTree) -> list[AnomalyWitness]:
    """Deep branching anomalies of ``cover``: one witness per piece pair and shared node.

    A shared node is not reported when it is the root of some piece, or when
    one piece holds it together with every child of it used by either side.
    """
    tree = as_query_tree(q)
    pieces = [s.nodes for s in cover.subtrees]
    roots = {s.root for s in cover.subtrees}
    witnesses: list[AnomalyWitness] = []
    for (i, si), (j, sj) in combinations(enumerate(pieces), 2):
        for v in sorted(si & sj):
            if v in roots:
                continue
            kids = set(tree.child_children(v))
            only_i = sorted((kids & si) - sj)
            only_j = sorted((kids & sj) - si)
            if not only_i or not only_j:
                continue
            used = {v} | (kids & (si | sj))
            if any(used <= sk for sk in pieces):
                continue
            witnesses.append(AnomalyWitness(i, j, v, only_i[0], only_j[0]))
    return witnesses


def has_root_partners(cover: Cover, tree: QueryTree) -> bool:
    """Every piece has another piece rooted at the same node, its parent or its child."""
    if len(cover) == 1:
        return True
    roots = [s.root for s in cover.subtrees]
    for i, r in enumerate(roots):
        if not any(
            j != i and (other == r or tree.parents[other] == r or tree.parents[r] == other)
            for j, other in enumerate(roots)
        ):
            return False
    return True


def is_root_split_cover(cover: Cover, q: QueryNode | QueryTree) -> bool:
    """Whether joins over piece roots alone reconstruct the query.

    Requires root partners for every piece, every root's query parent to be a
    root as well, and every other node to sit with its whole query subtree in
    a piece rooted at its nearest root ancestor.
    """
    tree = as_query_tree(q)
    if len(cover) == 1 and cover.subtrees[0].size == tree.size:
        return True
    if not has_root_partners(cover, tree):
        return False
    roots = cover.roots()
    for r in roots:
        if r != 0 and tree.parents[r] not in roots:
            return False
    for n in range(tree.size):
        if n in roots:
            continue
        anchor = tree.parents[n]
        while anchor not in roots:
            if anchor < 0:
                return False
            anchor = tree.parents[anchor]
        subtree = set(tree.subtree_nodes(n))
        if not any(s.root == anchor and subtree <= s.nodes for s in cover.subtrees):
            return False
    return True
