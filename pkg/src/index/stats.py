from collections import defaultdict

from src.index.reader import SubtreeIndex
from src.models.records import IndexStats, SizeBreakdown
from src.subtrees.keys import key_bit_bound, key_size, max_key_bytes


def index_stats(index: SubtreeIndex) -> IndexStats:
    """Key, posting and byte counts of an index, overall and per subtree size."""
    keys: dict[int, int] = defaultdict(int)
    postings: dict[int, int] = defaultdict(int)
    posting_bytes: dict[int, int] = defaultdict(int)
    for entry in index.entries():
        size = key_size(entry.key)
        keys[size] += 1
        postings[size] += entry.count
        posting_bytes[size] += entry.length

    return IndexStats(
        scheme=index.scheme.value,
        mss=index.mss,
        keys=index.key_count,
        postings=index.total_postings,
        bytes=index.nbytes,
        labels=len(index.labels),
        key_bytes=max_key_bytes(index.mss),
        key_bit_bound=key_bit_bound(index.mss, len(index.labels)),
        by_size=[
            SizeBreakdown(size=size, keys=keys[size], postings=postings[size], posting_bytes=posting_bytes[size])
            for size in range(1, index.mss + 1)
        ],
    )
