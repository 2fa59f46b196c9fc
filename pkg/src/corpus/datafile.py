"""Flat random-access storage for numbered parse trees.

Layout (little-endian)::

    header       <8sHI   magic b"SUBTRDAT", version, tree count
    label table  <I      label count, then per label <H length + UTF-8 bytes
    records      <iiI    tid, node count, CRC-32 of the node block
                 <iiiiii nodeId, parentId, labelId, pre, post, level  (x node count)
    offsets      <iQ     tid, record offset  (x tree count, ascending tid)
    footer       <Q8s    offset table position, magic b"SUBTREND"
"""

import mmap
import struct
import zlib
from bisect import bisect_left
from collections.abc import Iterable, Iterator
from pathlib import Path
from types import TracebackType

from src.corpus.tree import Corpus, ParseTree, TreeNode
from src.models.records import DataFileSummary
from src.utils.errors import CorruptRecordError, StructuralError, TreeOrderError, UnknownTreeError
from src.utils.logger import logger

MAGIC = b"SUBTRDAT"
END_MAGIC = b"SUBTREND"
VERSION = 1

HEADER = struct.Struct("<8sHI")
RECORD = struct.Struct("<iiI")
NODE = struct.Struct("<iiiiii")
OFFSET = struct.Struct("<iQ")
FOOTER = struct.Struct("<Q8s")
_COUNT = struct.Struct("<I")
_LEN = struct.Struct("<H")


def pack_labels(labels: Iterable[str]) -> bytes:
    """Serialize a label table in sorted order."""
    ordered = sorted(set(labels))
    parts = [_COUNT.pack(len(ordered))]
    for label in ordered:
        raw = label.encode("utf-8")
        parts.append(_LEN.pack(len(raw)))
        parts.append(raw)
    return b"".join(parts)


def unpack_labels(buf: bytes | mmap.mmap, offset: int) -> tuple[list[str], int]:
    """Read a label table at ``offset``; returns the labels and the end offset."""
    (count,) = _COUNT.unpack_from(buf, offset)
    offset += _COUNT.size
    labels: list[str] = []
    for _ in range(count):
        (length,) = _LEN.unpack_from(buf, offset)
        offset += _LEN.size
        labels.append(bytes(buf[offset : offset + length]).decode("utf-8"))
        offset += length
    return labels, offset


def write_data_file(corpus: Corpus | Iterable[ParseTree], path: str | Path) -> DataFileSummary:
    """Write numbered trees to ``path``.

    Raises:
        TreeOrderError: duplicate or decreasing tids.
        StructuralError: a tree that has not been numbered.
    """
    trees = list(corpus)
    path = Path(path)

    previous: int | None = None
    for tree in trees:
        if previous is not None and tree.tid <= previous:
            raise TreeOrderError(f"tid {tree.tid} follows tid {previous}; tids must be strictly increasing")
        if tree.nodes and not tree.numbered:
            raise StructuralError(f"tree {tree.tid} is not numbered")
        previous = tree.tid

    labels = sorted({n.label for t in trees for n in t.nodes})
    label_ids = {label: i for i, label in enumerate(labels)}

    path.parent.mkdir(parents=True, exist_ok=True)
    offsets: list[tuple[int, int]] = []
    node_count = 0
    with path.open("wb") as fh:
        fh.write(HEADER.pack(MAGIC, VERSION, len(trees)))
        fh.write(pack_labels(labels))
        for tree in trees:
            block = b"".join(
                NODE.pack(n.node_id, n.parent_id, label_ids[n.label], n.pre, n.post, n.level) for n in tree.nodes
            )
            offsets.append((tree.tid, fh.tell()))
            fh.write(RECORD.pack(tree.tid, len(tree.nodes), zlib.crc32(block)))
            fh.write(block)
            node_count += len(tree.nodes)
        table_pos = fh.tell()
        for tid, offset in offsets:
            fh.write(OFFSET.pack(tid, offset))
        fh.write(FOOTER.pack(table_pos, END_MAGIC))
        size = fh.tell()

    logger.info(f"Wrote {len(trees)} trees ({node_count} nodes) to {path}")
    return DataFileSummary(path=str(path), trees=len(trees), nodes=node_count, labels=len(labels), bytes=size)


class DataFileReader:
    """Memory-mapped reader over a data file.

    Reads never mutate shared state after ``__init__``, so one reader can
    serve several threads.
    """

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._fh = self.path.open("rb")
        try:
            self._mm = mmap.mmap(self._fh.fileno(), 0, access=mmap.ACCESS_READ)
        except ValueError as e:
            self._fh.close()
            raise CorruptRecordError(f"{self.path} is empty") from e
        try:
            self._load_layout()
        except (struct.error, UnicodeDecodeError) as e:
            self.close()
            raise CorruptRecordError(f"{self.path}: truncated data file") from e
        except CorruptRecordError:
            self.close()
            raise
        logger.debug(f"Opened data file {self.path} with {len(self._tids)} trees")

    def _load_layout(self) -> None:
        mm = self._mm
        magic, version, count = HEADER.unpack_from(mm, 0)
        if magic != MAGIC or version != VERSION:
            raise CorruptRecordError(f"{self.path} is not a version {VERSION} data file")
        table_pos, end_magic = FOOTER.unpack_from(mm, len(mm) - FOOTER.size)
        if end_magic != END_MAGIC:
            raise CorruptRecordError(f"{self.path}: missing footer")
        if table_pos + count * OFFSET.size + FOOTER.size != len(mm):
            raise CorruptRecordError(f"{self.path}: offset table does not match tree count")
        self.labels, _ = unpack_labels(mm, HEADER.size)
        self._tids: list[int] = []
        self._offsets: list[int] = []
        for i in range(count):
            tid, offset = OFFSET.unpack_from(mm, table_pos + i * OFFSET.size)
            self._tids.append(tid)
            self._offsets.append(offset)

    def __enter__(self) -> "DataFileReader":
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc: BaseException | None,
        tb: TracebackType | None,
    ) -> None:
        self.close()

    def close(self) -> None:
        if not self._mm.closed:
            self._mm.close()
        self._fh.close()

    def __len__(self) -> int:
        return len(self._tids)

    @property
    def tids(self) -> list[int]:
        return list(self._tids)

    def __contains__(self, tid: object) -> bool:
        if not isinstance(tid, int):
            return False
        i = bisect_left(self._tids, tid)
        return i < len(self._tids) and self._tids[i] == tid

    def read_tree(self, tid: int) -> ParseTree:
        """Fetch the tree stored under ``tid``.

        Raises:
            UnknownTreeError: ``tid`` is not stored.
            CorruptRecordError: the record fails its length or checksum check.
        """
        i = bisect_left(self._tids, tid)
        if i == len(self._tids) or self._tids[i] != tid:
            raise UnknownTreeError(tid)
        return self._read_record(self._offsets[i], tid)

    def _read_record(self, offset: int, expected_tid: int) -> ParseTree:
        mm = self._mm
        try:
            tid, count, crc = RECORD.unpack_from(mm, offset)
        except struct.error as e:
            raise CorruptRecordError(f"record for tree {expected_tid} lies outside the file") from e
        if tid != expected_tid or count < 0:
            raise CorruptRecordError(f"record header mismatch for tree {expected_tid}")
        start = offset + RECORD.size
        end = start + count * NODE.size
        if end > len(mm):
            raise CorruptRecordError(f"record for tree {tid} is truncated")
        block = mm[start:end]
        if zlib.crc32(block) != crc:
            raise CorruptRecordError(f"checksum mismatch for tree {tid}")
        labels = self.labels
        try:
            nodes = tuple(
                TreeNode(node_id=nid, parent_id=pid, label=labels[lid], pre=pre, post=post, level=lvl)
                for nid, pid, lid, pre, post, lvl in NODE.iter_unpack(block)
            )
        except IndexError as e:
            raise CorruptRecordError(f"tree {tid} references an unknown label") from e
        return ParseTree(tid=tid, nodes=nodes)

    def __iter__(self) -> Iterator[ParseTree]:
        for tid, offset in zip(self._tids, self._offsets, strict=True):
            yield self._read_record(offset, tid)

    def corpus(self) -> Corpus:
        return Corpus(trees=list(self))


def read_tree(path: str | Path, tid: int) -> ParseTree:
    """Open ``path`` and fetch a single tree."""
    with DataFileReader(path) as reader:
        return reader.read_tree(tid)
