from collections import defaultdict
from collections.abc import Iterable

import numpy as np
import pytest
from loguru import logger

from src.corpus.bracketed import parse_corpus
from src.corpus.datafile import DataFileReader
from src.index.builder import build_index, tree_records
from src.index.fileformat import ENTRY, HEADER
from src.index.postings import RootSplitPosting, encode_postings
from src.index.reader import SubtreeIndex
from src.index.scheme import CodingScheme
from src.index.stats import index_stats
from src.subtrees.embedding import embeds_at_root, is_subtree_of
from src.subtrees.keys import LabelTable, decode_key
from src.subtrees.shape import SubtreeShape, parse_shape
from src.testkit.fixtures import SYMMETRIC_TREE
from src.utils.errors import CorruptPageError, IndexFormatError, MssOutOfRangeError
from tests.helpers import SCHEMES, write_corpus


@pytest.fixture(scope="module")
def symmetric_data(tmp_path_factory):
    return write_corpus(tmp_path_factory.mktemp("symmetric"), "symmetric", parse_corpus(SYMMETRIC_TREE))


@pytest.mark.parametrize(
    "scheme, expected",
    [
        (CodingScheme.FILTER_BASED, {"NP": 1, "NN": 1, "NP(NN)": 1}),
        (CodingScheme.ROOT_SPLIT, {"NP": 1, "NN": 3, "NP(NN)": 1}),
        (CodingScheme.SUBTREE_INTERVAL, {"NP": 1, "NN": 3, "NP(NN)": 3}),
    ],
)
def test_posting_counts_on_symmetric_tree(index_factory, symmetric_data, scheme, expected):
    with SubtreeIndex(index_factory(symmetric_data, 2, scheme)) as index:
        assert index.scheme is scheme
        assert index.mss == 2
        counts = {text: len(index.lookup_shape(parse_shape(text))) for text in expected}
    logger.info(f"{scheme.value}: {counts}")
    assert counts == expected


def test_interval_postings_carry_every_node(index_factory, symmetric_data):
    with SubtreeIndex(index_factory(symmetric_data, 2, CodingScheme.SUBTREE_INTERVAL)) as index:
        postings = list(index.lookup_shape(parse_shape("NP(NN)")))
    assert all(p.m == 2 for p in postings)
    assert {p.nodes[0].l for p in postings} == {1}
    assert sorted(p.nodes[1].l for p in postings) == [2, 3, 4]
    assert all(node.o == node.l for p in postings for node in p.nodes)


def test_absent_shapes_have_empty_lists(index_factory, symmetric_data):
    with SubtreeIndex(index_factory(symmetric_data, 2, CodingScheme.ROOT_SPLIT)) as index:
        assert not index.lookup_shape(parse_shape("VP"))
        assert not index.lookup_shape(parse_shape("NP(NN)(NN)"))
        assert index.shape_posting_count(parse_shape("NN(NP)")) == 0
        assert list(index.lookup_shape(parse_shape("XYZ"))) == []


def test_build_is_deterministic(tmp_path, synthetic_data):
    first = build_index(synthetic_data, 3, "root-split", tmp_path / "a.idx")
    second = build_index(synthetic_data, 3, "root-split", tmp_path / "b.idx", run_size=50)
    logger.info(f"Default build used {first.runs} run(s), small run size used {second.runs}")
    assert second.runs > 1
    assert (tmp_path / "a.idx").read_bytes() == (tmp_path / "b.idx").read_bytes()
    assert first.keys == second.keys
    assert first.postings == second.postings


def test_small_directory_pages(tmp_path, synthetic_data):
    summary = build_index(synthetic_data, 2, "subtree-interval", tmp_path / "paged.idx", page_entries=3)
    with SubtreeIndex(tmp_path / "paged.idx") as index:
        assert index.page_entries == 3
        assert index.page_count == -(-summary.keys // 3)
        entries = list(index.entries())
        assert len(entries) == summary.keys
        keys = [e.key for e in entries]
        assert keys == sorted(keys)
        # Every key is reachable through the fences
        for entry in entries:
            assert index.find(entry.key) == entry


def test_index_holds_exactly_the_tree_records(index_factory, synthetic_corpus, synthetic_data):
    for scheme in SCHEMES:
        with SubtreeIndex(index_factory(synthetic_data, 3, scheme)) as index:
            expected: dict[bytes, set] = defaultdict(set)
            for tree in synthetic_corpus:
                for key, posting in tree_records(tree, 3, scheme, index.labels):
                    expected[key].add(posting)
            stored = {entry.key: list(index.lookup(entry.key)) for entry in index.entries()}
        assert set(stored) == set(expected)
        for key, postings in stored.items():
            assert len(postings) == len(set(postings))
            assert set(postings) == expected[key]
            assert [p.tid for p in postings] == sorted(p.tid for p in postings)


@pytest.mark.parametrize("mss", [1, 2, 3, 4, 5])
def test_posting_totals_are_ordered(index_factory, synthetic_data, mss):
    totals = {}
    keys = {}
    for scheme in SCHEMES:
        with SubtreeIndex(index_factory(synthetic_data, mss, scheme)) as index:
            totals[scheme] = index.total_postings
            keys[scheme] = index.key_count
    logger.info(f"mss={mss} postings: {({s.value: n for s, n in totals.items()})}")
    fb = totals[CodingScheme.FILTER_BASED]
    rs = totals[CodingScheme.ROOT_SPLIT]
    si = totals[CodingScheme.SUBTREE_INTERVAL]
    assert fb <= rs <= si
    assert len(set(keys.values())) == 1
    if mss == 1:
        assert rs == si


def test_schemes_agree_on_tids_and_roots(index_factory, synthetic_data):
    with (
        SubtreeIndex(index_factory(synthetic_data, 3, CodingScheme.FILTER_BASED)) as fb,
        SubtreeIndex(index_factory(synthetic_data, 3, CodingScheme.ROOT_SPLIT)) as rs,
        SubtreeIndex(index_factory(synthetic_data, 3, CodingScheme.SUBTREE_INTERVAL)) as si,
    ):
        for entry in si.entries():
            intervals = list(si.lookup(entry.key))
            roots = sorted({(p.tid, p.nodes[0].l, p.nodes[0].r, p.nodes[0].v) for p in intervals})
            assert [tuple(p) for p in rs.lookup(entry.key)] == roots
            assert fb.lookup(entry.key).tids() == sorted({p.tid for p in intervals})


def _drop_last_leaf(shape: SubtreeShape) -> SubtreeShape:
    *head, last = shape.children
    if not last.children:
        return SubtreeShape(shape.label, tuple(head))
    return SubtreeShape(shape.label, (*head, _drop_last_leaf(last)))


def test_postings_shrink_as_keys_grow(index_factory, synthetic_data):
    with (
        SubtreeIndex(index_factory(synthetic_data, 3, CodingScheme.FILTER_BASED)) as fb,
        SubtreeIndex(index_factory(synthetic_data, 3, CodingScheme.ROOT_SPLIT)) as rs,
    ):
        shapes = [s for s in (decode_key(e.key, fb.labels) for e in fb.entries()) if s.size > 1]
        rng = np.random.default_rng(5)
        for i in rng.integers(len(shapes), size=1000):
            large = shapes[int(i)]
            # Dropping a leaf keeps the root; a child's subtree does not
            rooted, below = _drop_last_leaf(large), large.children[0]
            assert embeds_at_root(rooted, large)
            for small in (rooted, below):
                assert is_subtree_of(small, large)
                assert set(fb.lookup_shape(large).tids()) <= set(fb.lookup_shape(small).tids())
            large_roots = {tuple(p) for p in rs.lookup_shape(large)}
            assert large_roots
            assert large_roots <= {tuple(p) for p in rs.lookup_shape(rooted)}


def test_index_stats(index_factory, synthetic_data):
    with SubtreeIndex(index_factory(synthetic_data, 3, CodingScheme.ROOT_SPLIT)) as index:
        stats = index_stats(index)
        logger.info(f"Index stats: {stats.model_dump(exclude={'by_size'})}")
        assert stats.scheme == "root-split"
        assert stats.keys == index.key_count
        assert [row.size for row in stats.by_size] == [1, 2, 3]
        assert sum(row.keys for row in stats.by_size) == stats.keys
        assert sum(row.postings for row in stats.by_size) == stats.postings
        assert stats.bytes == index.path.stat().st_size
        assert stats.key_bytes == 15


def test_corrupt_directory_page(tmp_path, symmetric_data):
    path = tmp_path / "corrupt.idx"
    build_index(symmetric_data, 2, "root-split", path)
    raw = bytearray(path.read_bytes())
    directory_offset = HEADER.unpack_from(raw, 0)[7]
    # Offset field of the first entry: 1 length byte plus the key bytes
    raw[directory_offset + ENTRY.size - 12] ^= 0x01
    path.write_bytes(bytes(raw))
    with SubtreeIndex(path) as index, pytest.raises(CorruptPageError, match="checksum"):
        list(index.entries())


@pytest.mark.parametrize("payload", [b"", b"garbage" * 20])
def test_not_an_index_file(tmp_path, payload):
    path = tmp_path / "junk.idx"
    path.write_bytes(payload)
    with pytest.raises(IndexFormatError):
        SubtreeIndex(path)


def test_build_rejects_bad_arguments(tmp_path, symmetric_data):
    with pytest.raises(MssOutOfRangeError):
        build_index(symmetric_data, 0, "root-split", tmp_path / "x.idx")
    with pytest.raises(MssOutOfRangeError):
        build_index(symmetric_data, 7, "root-split", tmp_path / "x.idx")
    with pytest.raises(ValueError, match="unknown coding scheme"):
        build_index(symmetric_data, 2, "pre-post", tmp_path / "x.idx")


def test_encode_rejects_unsorted_postings():
    with pytest.raises(ValueError, match="not sorted"):
        encode_postings(CodingScheme.ROOT_SPLIT, [RootSplitPosting(2, 1, 1, 0), RootSplitPosting(1, 1, 1, 0)])


def test_labels_match_data_file(index_factory, synthetic_data):
    path = index_factory(synthetic_data, 1, CodingScheme.FILTER_BASED)
    with DataFileReader(synthetic_data) as reader, SubtreeIndex(path) as index:
        assert index.labels == LabelTable(reader.labels)


def _by_tid(postings: Iterable[RootSplitPosting]) -> dict[int, list[RootSplitPosting]]:
    out: dict[int, list[RootSplitPosting]] = defaultdict(list)
    for p in postings:
        out[p.tid].append(p)
    return out


def _parents_in(postings: list[RootSplitPosting], child: RootSplitPosting) -> list[RootSplitPosting]:
    return [p for p in postings if p.tid == child.tid and p.l < child.l and child.r < p.r and p.v == child.v - 1]


def test_child_key_postings_have_at_most_one_parent_posting(index_factory, synthetic_data):
    with SubtreeIndex(index_factory(synthetic_data, 3, CodingScheme.ROOT_SPLIT)) as rs:
        shapes = [s for s in (decode_key(e.key, rs.labels) for e in rs.entries()) if s.size > 1]
        pairs = [(large, below) for large in shapes for below in large.children if below.label != large.label]
        rng = np.random.default_rng(9)
        checked = 0
        for i in rng.integers(len(pairs), size=300):
            large, below = pairs[int(i)]
            large_by_tid = _by_tid(rs.lookup_shape(large))
            below_by_tid = _by_tid(rs.lookup_shape(below))
            for tid, postings in below_by_tid.items():
                for posting in postings:
                    assert len(_parents_in(large_by_tid.get(tid, []), posting)) <= 1
                checked += len(postings)
            for tid, postings in large_by_tid.items():
                for posting in postings:
                    assert any(_parents_in([posting], p) for p in below_by_tid[tid])
    logger.info(f"Checked {checked} child postings across {len(pairs)} key pairs")
    assert checked > 0


def test_parent_association_on_nested_repeats(index_factory, tmp_path):
    data = write_corpus(tmp_path, "nested", parse_corpus("(A (B (A (B x))))"))
    with SubtreeIndex(index_factory(data, 2, CodingScheme.ROOT_SPLIT)) as rs:
        large = list(rs.lookup_shape(parse_shape("A(B)")))
        below = list(rs.lookup_shape(parse_shape("B")))
    assert len(large) == 2
    assert len(below) == 2
    inner = max(below, key=lambda p: p.l)
    # Both A(B) roots enclose the inner B; only one is its parent
    assert sum(1 for p in large if p.l < inner.l and inner.r < p.r) == 2
    assert len(_parents_in(large, inner)) == 1
    assert all(len(_parents_in(large, p)) == 1 for p in below)
