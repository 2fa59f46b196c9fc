import heapq
import pickle
import tempfile
import time
import zlib
from collections.abc import Iterable, Iterator
from itertools import groupby
from pathlib import Path

from src.config.settings import Settings, check_mss
from src.corpus.datafile import DataFileReader, pack_labels
from src.corpus.tree import ParseTree
from src.index.fileformat import ENTRY, HEADER, MAGIC, PAGE_CRC, VERSION
from src.index.postings import FilterPosting, IntervalPosting, NodeInterval, Posting, RootSplitPosting, encode_postings
from src.index.scheme import CodingScheme
from src.models.records import BuildSummary
from src.subtrees.enumeration import enumerate_shapes
from src.subtrees.keys import LabelTable, SubtreeKey, encode_canonical
from src.utils.logger import logger

Record = tuple[SubtreeKey, Posting]


def tree_records(tree: ParseTree, mss: int, scheme: CodingScheme, labels: LabelTable) -> set[Record]:
    """Distinct (key, posting) pairs contributed by one tree."""
    by_id = tree.by_id
    records: set[Record] = set()
    for shape, instance in enumerate_shapes(tree, mss):
        key = encode_canonical(shape, labels)
        if scheme is CodingScheme.FILTER_BASED:
            records.add((key, FilterPosting(tree.tid)))
        elif scheme is CodingScheme.ROOT_SPLIT:
            root = by_id[instance.node_ids[0]]
            records.add((key, RootSplitPosting(tree.tid, root.pre, root.post, root.level)))
        else:
            nodes = tuple(
                NodeInterval(n.pre, n.post, n.level, n.pre) for n in (by_id[i] for i in instance.node_ids)
            )
            records.add((key, IntervalPosting(tree.tid, nodes)))
    return records


class _RunSpiller:
    """Collects records and spills sorted runs to a scratch directory."""

    def __init__(self, scratch: Path, run_size: int):
        self.scratch = scratch
        self.run_size = run_size
        self.buffer: list[Record] = []
        self.run_paths: list[Path] = []

    def add(self, records: Iterable[Record]) -> None:
        self.buffer.extend(records)
        if len(self.buffer) >= self.run_size:
            self.spill()

    def spill(self) -> None:
        if not self.buffer:
            return
        self.buffer.sort()
        path = self.scratch / f"run-{len(self.run_paths):05d}.pkl"
        with path.open("wb") as fh:
            for record in self.buffer:
                pickle.dump(record, fh, protocol=pickle.HIGHEST_PROTOCOL)
        logger.debug(f"Spilled sorted run {path.name} with {len(self.buffer)} records")
        self.run_paths.append(path)
        self.buffer = []

    def runs(self) -> list[Iterator[Record]]:
        streams = [_read_run(p) for p in self.run_paths]
        if self.buffer:
            self.buffer.sort()
            streams.append(iter(self.buffer))
        return streams


def _read_run(path: Path) -> Iterator[Record]:
    with path.open("rb") as fh:
        while True:
            try:
                yield pickle.load(fh)
            except EOFError:
                return


def build_index(
    data_path: str | Path,
    mss: int,
    scheme: CodingScheme | str,
    path: str | Path,
    run_size: int | None = None,
    page_entries: int | None = None,
) -> BuildSummary:
    """Build an index file over every tree of a data file.

    Args:
        data_path: Data file written by ``write_data_file``
        mss: Largest subtree size to index (1..MAX_MSS)
        scheme: Posting coding scheme
        path: Destination of the index file
        run_size: Records per sorted run (defaults to ``Settings.SORT_RUN_SIZE``)
        page_entries: Directory entries per page (defaults to ``Settings.DIRECTORY_PAGE_ENTRIES``)

    Returns:
        BuildSummary with key, posting and byte counts

    Raises:
        MssOutOfRangeError: ``mss`` outside 1..MAX_MSS.

    """
    check_mss(mss)
    scheme = CodingScheme.parse(scheme)
    run_size = run_size or Settings.SORT_RUN_SIZE
    page_entries = page_entries or Settings.DIRECTORY_PAGE_ENTRIES
    path = Path(path)
    started = time.perf_counter()
    logger.info(f"Building {scheme.value} index (mss={mss}) from {data_path}")

    with DataFileReader(data_path) as reader, tempfile.TemporaryDirectory(prefix="si-runs-") as scratch:
        labels = LabelTable(reader.labels)
        spiller = _RunSpiller(Path(scratch), run_size)
        for tree in reader:
            spiller.add(tree_records(tree, mss, scheme, labels))
        if spiller.run_paths:
            spiller.spill()
        run_count = len(spiller.run_paths) + (1 if spiller.buffer else 0)

        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("wb") as fh:
            fh.write(b"\0" * HEADER.size)
            fh.write(pack_labels(labels.labels))

            entries: list[bytes] = []
            total_postings = 0
            merged = heapq.merge(*spiller.runs())
            for key, group in groupby(merged, key=lambda record: record[0]):
                postings = [p for p, _ in groupby(record[1] for record in group)]
                data = encode_postings(scheme, postings)
                entries.append(ENTRY.pack(len(key), key, fh.tell(), len(data), len(postings)))
                fh.write(data)
                total_postings += len(postings)

            directory_offset = fh.tell()
            pages = 0
            for start in range(0, len(entries), page_entries):
                page = b"".join(entries[start : start + page_entries])
                fh.write(page)
                fh.write(PAGE_CRC.pack(zlib.crc32(page)))
                pages += 1
            size = fh.tell()

            fh.seek(0)
            fh.write(
                HEADER.pack(
                    MAGIC,
                    VERSION,
                    scheme.tag,
                    mss,
                    page_entries,
                    len(entries),
                    len(labels),
                    directory_offset,
                    pages,
                    total_postings,
                )
            )

    elapsed = time.perf_counter() - started
    logger.info(f"Index {path} built: {len(entries)} keys, {total_postings} postings, {size} bytes in {elapsed:.2f}s")
    return BuildSummary(
        path=str(path),
        scheme=scheme.value,
        mss=mss,
        keys=len(entries),
        postings=total_postings,
        bytes=size,
        runs=run_count,
        wall_time=elapsed,
    )
