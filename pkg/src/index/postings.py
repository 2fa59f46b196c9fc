"""Posting records and their varint encodings.

Every list starts with its posting count. Tids are delta coded against the
previous posting; within one tid the root pre rank is delta coded too.

* filter-based:      tid
* root-split:        tid, l, r, v
* subtree-interval:  tid, m, then m x (l, r, v, o)
"""

from collections.abc import Iterable, Iterator
from typing import NamedTuple

from src.index.scheme import CodingScheme
from src.index.varint import decode_varint, encode_varint
from src.subtrees.keys import SubtreeKey
from src.utils.errors import CorruptPageError


class FilterPosting(NamedTuple):
    tid: int


class NodeInterval(NamedTuple):
    """Interval numbers of one instance node; ``o`` repeats the pre rank."""

    l: int  # noqa: E741
    r: int
    v: int
    o: int


class IntervalPosting(NamedTuple):
    tid: int
    nodes: tuple[NodeInterval, ...]

    @property
    def m(self) -> int:
        return len(self.nodes)


class RootSplitPosting(NamedTuple):
    tid: int
    l: int  # noqa: E741
    r: int
    v: int


Posting = FilterPosting | IntervalPosting | RootSplitPosting


def encode_postings(scheme: CodingScheme, postings: Iterable[Posting]) -> bytes:
    """Encode an already sorted, duplicate-free list."""
    items = list(postings)
    out = bytearray()
    encode_varint(len(items), out)
    prev_tid = 0
    prev_l = 0
    for posting in items:
        delta = posting.tid - prev_tid
        if delta < 0:
            raise ValueError(f"postings are not sorted by tid ({posting.tid} after {prev_tid})")
        encode_varint(delta, out)
        match posting:
            case FilterPosting():
                pass
            case RootSplitPosting(_, l, r, v):
                encode_varint(l - prev_l if delta == 0 else l, out)
                encode_varint(r, out)
                encode_varint(v, out)
                prev_l = l
            case IntervalPosting(_, nodes):
                encode_varint(len(nodes), out)
                root_l = nodes[0].l
                encode_varint(root_l - prev_l if delta == 0 else root_l, out)
                encode_varint(nodes[0].r, out)
                encode_varint(nodes[0].v, out)
                encode_varint(nodes[0].o, out)
                for node in nodes[1:]:
                    for value in node:
                        encode_varint(value, out)
                prev_l = root_l
        prev_tid = posting.tid
    return bytes(out)


def decode_count(buf: bytes | memoryview) -> int:
    return decode_varint(buf, 0)[0] if len(buf) else 0


def iter_postings(scheme: CodingScheme, buf: bytes | memoryview) -> Iterator[Posting]:
    """Lazily decode a posting list."""
    if not len(buf):
        return
    count, pos = decode_varint(buf, 0)
    tid = 0
    prev_l = 0
    for _ in range(count):
        delta, pos = decode_varint(buf, pos)
        tid += delta
        if scheme is CodingScheme.FILTER_BASED:
            yield FilterPosting(tid)
            continue
        if scheme is CodingScheme.ROOT_SPLIT:
            l, pos = decode_varint(buf, pos)  # noqa: E741
            l = prev_l + l if delta == 0 else l  # noqa: E741
            r, pos = decode_varint(buf, pos)
            v, pos = decode_varint(buf, pos)
            prev_l = l
            yield RootSplitPosting(tid, l, r, v)
            continue
        m, pos = decode_varint(buf, pos)
        if m == 0:
            raise CorruptPageError(f"interval posting for tree {tid} has no nodes")
        nodes: list[NodeInterval] = []
        for i in range(m):
            l, pos = decode_varint(buf, pos)  # noqa: E741
            if i == 0:
                l = prev_l + l if delta == 0 else l  # noqa: E741
                prev_l = l
            r, pos = decode_varint(buf, pos)
            v, pos = decode_varint(buf, pos)
            o, pos = decode_varint(buf, pos)
            nodes.append(NodeInterval(l, r, v, o))
        yield IntervalPosting(tid, tuple(nodes))
    if pos != len(buf):
        raise CorruptPageError(f"{len(buf) - pos} trailing bytes after {count} postings")


class PostingList:
    """Sorted postings of one key.

    Iterating decodes on the fly; each ``iter()`` starts an independent
    stream over the same bytes.
    """

    def __init__(self, key: SubtreeKey, scheme: CodingScheme, data: bytes | memoryview = b"", count: int | None = None):
        self.key = key
        self.scheme = scheme
        self._data = data
        self._count = decode_count(data) if count is None else count

    def __len__(self) -> int:
        return self._count

    def __bool__(self) -> bool:
        return self._count > 0

    def __iter__(self) -> Iterator[Posting]:
        return iter_postings(self.scheme, self._data)

    @property
    def nbytes(self) -> int:
        return len(self._data)

    def tids(self) -> list[int]:
        """Distinct tids in ascending order."""
        out: list[int] = []
        for posting in self:
            if not out or out[-1] != posting.tid:
                out.append(posting.tid)
        return out

    def __repr__(self) -> str:
        return f"PostingList(scheme={self.scheme.value}, postings={self._count})"
