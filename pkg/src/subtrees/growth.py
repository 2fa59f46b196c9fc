from collections import Counter
from collections.abc import Iterable

from src.config.settings import check_mss
from src.corpus.tree import ParseTree
from src.models.records import SubtreeGrowth
from src.subtrees.enumeration import enumerate_shapes
from src.utils.logger import logger


def subtree_growth(trees: Iterable[ParseTree], mss: int) -> SubtreeGrowth:
    """Distinct keys and instance counts per subtree size 1..mss."""
    check_mss(mss)
    distinct: dict[int, set[str]] = {size: set() for size in range(1, mss + 1)}
    instances: Counter[int] = Counter()
    tree_count = 0
    for tree in trees:
        tree_count += 1
        for shape, _ in enumerate_shapes(tree, mss):
            distinct[shape.size].add(shape.render())
            instances[shape.size] += 1
    logger.debug(f"Enumerated subtree growth over {tree_count} trees up to size {mss}")
    return SubtreeGrowth(
        mss=mss,
        keys_by_size={size: len(keys) for size, keys in distinct.items()},
        instances_by_size={size: instances[size] for size in distinct},
    )
