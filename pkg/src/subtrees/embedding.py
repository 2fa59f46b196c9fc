from functools import cache
from itertools import groupby, permutations, product

from src.subtrees.shape import SubtreeShape


def _match_children(pattern: tuple[SubtreeShape, ...], target: tuple[SubtreeShape, ...]) -> bool:
    """Injective assignment of pattern children to target children (augmenting paths)."""
    if len(pattern) > len(target):
        return False
    edges = [[j for j, t in enumerate(target) if _embeds_at(p, t)] for p in pattern]
    owner: dict[int, int] = {}

    def _augment(i: int, seen: set[int]) -> bool:
        for j in edges[i]:
            if j in seen:
                continue
            seen.add(j)
            if j not in owner or _augment(owner[j], seen):
                owner[j] = i
                return True
        return False

    return all(_augment(i, set()) for i in range(len(pattern)))


@cache
def _embeds_at(pattern: SubtreeShape, target: SubtreeShape) -> bool:
    if pattern.label != target.label or pattern.size > target.size:
        return False
    return _match_children(pattern.children, target.children)


def is_subtree_of(a: SubtreeShape, b: SubtreeShape) -> bool:
    """True when ``a`` embeds into ``b`` preserving labels and parent-child edges.

    The embedding is injective and may place ``a``'s root on any node of ``b``.
    """
    return any(_embeds_at(a, node) for node in b.preorder())


def embeds_at_root(a: SubtreeShape, b: SubtreeShape) -> bool:
    """True when ``a`` embeds into ``b`` with ``a``'s root placed on ``b``'s root."""
    return _embeds_at(a, b)


def automorphisms(shape: SubtreeShape) -> list[tuple[int, ...]]:
    """Every relabeling of pre-order positions that maps ``shape`` onto itself.

    ``perm[i] = j`` means position ``i`` may be bound to the data node stored
    at position ``j`` of the same posting. The identity always comes first.
    """
    return [tuple(p) for p in _automorphisms(shape)]


@cache
def _automorphisms(shape: SubtreeShape) -> tuple[tuple[int, ...], ...]:
    starts: list[int] = []
    pos = 1
    for child in shape.children:
        starts.append(pos)
        pos += child.size

    # Equal siblings are adjacent in canonical order; each group may be permuted
    groups: list[list[int]] = [
        [i for i, _ in grp] for _, grp in groupby(enumerate(shape.children), key=lambda item: item[1])
    ]
    group_orders = [list(permutations(g)) for g in groups]
    inner = [_automorphisms(c) for c in shape.children]

    results: list[tuple[int, ...]] = []
    for orders in product(*group_orders):
        target_of: dict[int, int] = {}
        for group, order in zip(groups, orders, strict=True):
            target_of.update(zip(group, order, strict=True))
        for combo in product(*inner):
            mapping = [0]
            for i, child_perm in enumerate(combo):
                base = starts[target_of[i]]
                mapping.extend(base + x for x in child_perm)
            results.append(tuple(mapping))
    return tuple(results)
