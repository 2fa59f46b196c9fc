from .builder import build_index, tree_records
from .postings import (
    FilterPosting,
    IntervalPosting,
    NodeInterval,
    Posting,
    PostingList,
    RootSplitPosting,
    encode_postings,
    iter_postings,
)
from .reader import DirectoryEntry, SubtreeIndex
from .scheme import CodingScheme
from .stats import index_stats
from .varint import decode_varint, encode_varint

__all__ = [
    "CodingScheme",
    "DirectoryEntry",
    "FilterPosting",
    "IntervalPosting",
    "NodeInterval",
    "Posting",
    "PostingList",
    "RootSplitPosting",
    "SubtreeIndex",
    "build_index",
    "decode_varint",
    "encode_postings",
    "encode_varint",
    "index_stats",
    "iter_postings",
    "tree_records",
]
