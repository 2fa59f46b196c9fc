from collections import Counter
from collections.abc import Iterable

import numpy as np

from src.corpus.tree import ParseTree
from src.models.records import CorpusStats

WIDE_BRANCHING = 10


def corpus_stats(trees: Iterable[ParseTree]) -> CorpusStats:
    """Node counts and branching statistics of a corpus.

    An empty corpus yields all zeros.
    """
    tree_count = 0
    labels: set[str] = set()
    fanouts: list[int] = []
    for tree in trees:
        tree_count += 1
        labels.update(tree.labels)
        fanouts.extend(len(kids) for kids in tree.children.values())

    if not fanouts:
        return CorpusStats(trees=tree_count)

    arr = np.asarray(fanouts, dtype=np.int64)
    internal = arr[arr > 0]
    histogram = Counter(int(k) for k in internal)
    return CorpusStats(
        trees=tree_count,
        nodes=int(arr.size),
        internal_nodes=int(internal.size),
        avg_branching=float(internal.mean()) if internal.size else 0.0,
        max_branching=int(arr.max()),
        labels=len(labels),
        wide_nodes=int((arr > WIDE_BRANCHING).sum()),
        branching_histogram=dict(sorted(histogram.items())),
    )
