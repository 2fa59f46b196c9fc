from collections.abc import Iterator
from typing import NamedTuple

from src.config.settings import check_mss
from src.corpus.tree import ParseTree
from src.subtrees.keys import LabelTable, SubtreeKey, encode_canonical
from src.subtrees.shape import SubtreeShape, sort_key


class SubtreeInstance(NamedTuple):
    """One occurrence of a key in a tree.

    ``node_ids[i]`` is the data node bound to the i-th node of the key's
    canonical pre-order enumeration; ``node_ids[0]`` is the instance root.
    """

    tid: int
    node_ids: tuple[int, ...]


class _Piece(NamedTuple):
    shape: SubtreeShape
    node_ids: tuple[int, ...]


def _combine(label: str, node_id: int, chosen: list[_Piece]) -> _Piece:
    ordered = sorted(chosen, key=lambda p: sort_key(p.shape))
    shape = SubtreeShape(label, tuple(p.shape for p in ordered))
    ids = (node_id, *(i for p in ordered for i in p.node_ids))
    return _Piece(shape, ids)


def rooted_pieces(tree: ParseTree, mss: int) -> dict[int, list[_Piece]]:
    """Every connected subtree of at most ``mss`` nodes, grouped by its root node id.

    Pieces rooted at a node are built from the pieces of its children: each
    combination picks at most one piece per child, so every node set is
    produced exactly once.
    """
    pieces: dict[int, list[_Piece]] = {}
    children = tree.children
    # Post order: children before parents
    for node in sorted(tree.nodes, key=lambda n: n.post):
        # (pieces chosen so far, total size including the root)
        combos: list[tuple[list[_Piece], int]] = [([], 1)]
        if mss > 1:
            for child_id in children[node.node_id]:
                extended: list[tuple[list[_Piece], int]] = []
                for chosen, size in combos:
                    for piece in pieces[child_id]:
                        if size + piece.shape.size <= mss:
                            extended.append(([*chosen, piece], size + piece.shape.size))
                combos.extend(extended)
        pieces[node.node_id] = [_combine(node.label, node.node_id, chosen) for chosen, _ in combos]
    return pieces


def enumerate_shapes(tree: ParseTree, mss: int) -> Iterator[tuple[SubtreeShape, SubtreeInstance]]:
    """Canonical shape and aligned instance of every subtree of size 1..mss."""
    check_mss(mss)
    for root_id, root_pieces in rooted_pieces(tree, mss).items():
        for piece in root_pieces:
            assert piece.node_ids[0] == root_id
            yield piece.shape, SubtreeInstance(tree.tid, piece.node_ids)


def enumerate_subtrees(
    tree: ParseTree, mss: int, labels: LabelTable | None = None
) -> Iterator[tuple[SubtreeKey, SubtreeInstance]]:
    """Key and aligned instance of every subtree of size 1..mss.

    Keys are encoded against ``labels``; without a table the tree's own
    alphabet is used, which only makes keys comparable within that tree.

    Raises:
        MssOutOfRangeError: ``mss`` outside 1..MAX_MSS.
    """
    table = labels if labels is not None else LabelTable(tree.labels)
    for shape, instance in enumerate_shapes(tree, mss):
        yield encode_canonical(shape, table), instance
