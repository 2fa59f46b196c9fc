import mmap
import struct
import zlib
from bisect import bisect_left, bisect_right
from collections.abc import Iterator
from pathlib import Path
from types import TracebackType
from typing import NamedTuple

from src.corpus.datafile import unpack_labels
from src.index.fileformat import ENTRY, HEADER, MAGIC, PAGE_CRC, VERSION, page_bytes
from src.index.postings import PostingList
from src.index.scheme import CodingScheme
from src.subtrees.keys import LabelTable, SubtreeKey, encode_key
from src.subtrees.shape import SubtreeShape
from src.utils.errors import CorruptPageError, IndexFormatError, KeyEncodingError
from src.utils.logger import logger


class DirectoryEntry(NamedTuple):
    key: SubtreeKey
    offset: int
    length: int
    count: int


class SubtreeIndex:
    """Read side of an index file.

    Only the page fences are kept in memory; directory pages and posting
    lists are read from the memory map on demand. Instances are immutable
    after opening and can be shared between threads.
    """

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._fh = self.path.open("rb")
        try:
            self._mm = mmap.mmap(self._fh.fileno(), 0, access=mmap.ACCESS_READ)
        except ValueError as e:
            self._fh.close()
            raise IndexFormatError(f"{self.path} is empty") from e
        try:
            self._load_header()
        except (struct.error, UnicodeDecodeError) as e:
            self.close()
            raise IndexFormatError(f"{self.path}: truncated index file") from e
        except IndexFormatError:
            self.close()
            raise
        logger.debug(
            f"Opened {self.scheme.value} index {self.path}: "
            f"mss={self.mss}, {self.key_count} keys, {self.page_count} pages"
        )

    @classmethod
    def open(cls, path: str | Path) -> "SubtreeIndex":
        return cls(path)

    def _load_header(self) -> None:
        mm = self._mm
        (
            magic,
            version,
            tag,
            mss,
            page_entries,
            key_count,
            label_count,
            directory_offset,
            page_count,
            total_postings,
        ) = HEADER.unpack_from(mm, 0)
        if magic != MAGIC:
            raise IndexFormatError(f"{self.path} is not an index file")
        if version != VERSION:
            raise IndexFormatError(f"{self.path}: unsupported index version {version}")
        self.scheme = CodingScheme.from_tag(tag)
        self.mss: int = mss
        self.page_entries: int = page_entries
        self.key_count: int = key_count
        self.page_count: int = page_count
        self.total_postings: int = total_postings
        self._directory_offset: int = directory_offset

        labels, _ = unpack_labels(mm, HEADER.size)
        if len(labels) != label_count:
            raise IndexFormatError(f"{self.path}: label table holds {len(labels)} labels, header says {label_count}")
        self.labels = LabelTable(labels)

        expected_pages = -(-key_count // page_entries) if page_entries else 0
        if page_count != expected_pages:
            raise IndexFormatError(f"{self.path}: {page_count} directory pages for {key_count} keys")
        full_pages = max(page_count - 1, 0)
        last_entries = key_count - full_pages * page_entries
        last_page = page_bytes(last_entries) if page_count else 0
        directory_end = directory_offset + full_pages * page_bytes(page_entries) + last_page
        if directory_end != len(mm):
            raise IndexFormatError(f"{self.path}: directory does not end at the end of the file")

        # First key of every page
        self._fences: list[SubtreeKey] = []
        for page in range(page_count):
            length, raw, _, _, _ = ENTRY.unpack_from(mm, self._page_start(page))
            self._fences.append(bytes(raw[:length]))

    def _page_start(self, page: int) -> int:
        return self._directory_offset + page * page_bytes(self.page_entries)

    def _page_entries(self, page: int) -> int:
        if page < self.page_count - 1:
            return self.page_entries
        return self.key_count - (self.page_count - 1) * self.page_entries

    def read_page(self, page: int) -> list[DirectoryEntry]:
        """Decode one directory page.

        Raises:
            CorruptPageError: the page fails its checksum.
        """
        start = self._page_start(page)
        count = self._page_entries(page)
        end = start + count * ENTRY.size
        body = self._mm[start:end]
        (crc,) = PAGE_CRC.unpack_from(self._mm, end)
        if zlib.crc32(body) != crc:
            raise CorruptPageError(f"{self.path}: directory page {page} failed its checksum")
        entries: list[DirectoryEntry] = []
        for length, raw, offset, nbytes, postings in ENTRY.iter_unpack(body):
            entries.append(DirectoryEntry(bytes(raw[:length]), offset, nbytes, postings))
        return entries

    def find(self, key: SubtreeKey) -> DirectoryEntry | None:
        """Directory entry of ``key`` or None."""
        page = bisect_right(self._fences, key) - 1
        if page < 0:
            return None
        entries = self.read_page(page)
        keys = [e.key for e in entries]
        i = bisect_left(keys, key)
        if i < len(entries) and keys[i] == key:
            return entries[i]
        return None

    def lookup(self, key: SubtreeKey) -> PostingList:
        """Posting list of ``key``; empty when the key is absent."""
        entry = self.find(key)
        if entry is None:
            return PostingList(key, self.scheme, b"", 0)
        return PostingList(key, self.scheme, self._mm[entry.offset : entry.offset + entry.length], entry.count)

    def lookup_shape(self, shape: SubtreeShape) -> PostingList:
        """Posting list of a shape; shapes with labels outside the index alphabet are absent."""
        try:
            key = encode_key(shape, self.labels, self.mss)
        except KeyEncodingError:
            return PostingList(b"", self.scheme, b"", 0)
        return self.lookup(key)

    def posting_count(self, key: SubtreeKey) -> int:
        entry = self.find(key)
        return entry.count if entry else 0

    def shape_posting_count(self, shape: SubtreeShape) -> int:
        try:
            key = encode_key(shape, self.labels, self.mss)
        except KeyEncodingError:
            return 0
        return self.posting_count(key)

    def entries(self) -> Iterator[DirectoryEntry]:
        """Every directory entry in key order."""
        for page in range(self.page_count):
            yield from self.read_page(page)

    def __len__(self) -> int:
        return self.key_count

    @property
    def nbytes(self) -> int:
        return len(self._mm)

    def close(self) -> None:
        if not self._mm.closed:
            self._mm.close()
        self._fh.close()

    def __enter__(self) -> "SubtreeIndex":
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc: BaseException | None,
        tb: TracebackType | None,
    ) -> None:
        self.close()
