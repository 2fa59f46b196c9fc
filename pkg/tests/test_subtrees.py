from collections import Counter
from math import comb

import numpy as np
import pytest
from loguru import logger

from src.corpus.bracketed import parse_corpus
from src.subtrees.embedding import automorphisms, is_subtree_of
from src.subtrees.enumeration import enumerate_shapes, enumerate_subtrees, rooted_pieces
from src.subtrees.growth import subtree_growth
from src.subtrees.keys import (
    LabelTable,
    decode_key,
    encode_key,
    key_bit_bound,
    key_size,
    max_key_bytes,
    render_key,
)
from src.subtrees.shape import SubtreeShape, canonicalize, is_canonical, parse_shape
from src.testkit.fixtures import SYMMETRIC_TREE
from src.utils.errors import KeyEncodingError, MssOutOfRangeError


def _tree(text: str):
    return parse_corpus(text).trees[0]


def test_parse_shape_is_canonical():
    shape = parse_shape("S(VP(VBZ)(NP))(NP(NNS))")
    assert shape.render() == "S(NP(NNS))(VP(NP)(VBZ))"
    assert shape.size == 6
    assert is_canonical(shape)
    assert not is_canonical(SubtreeShape("A", (SubtreeShape("C"), SubtreeShape("B"))))


@pytest.mark.parametrize("text", ["", "A(", "A(B))", "A(//B)", "(A)"])
def test_parse_shape_rejects_garbage(text):
    with pytest.raises(KeyEncodingError):
        parse_shape(text)


def test_canonicalize_is_idempotent():
    shape = SubtreeShape("A", (SubtreeShape("C", (SubtreeShape("E"), SubtreeShape("D"))), SubtreeShape("B")))
    once = canonicalize(shape)
    assert once.render() == "A(B)(C(D)(E))"
    assert canonicalize(once) == once


def test_keys_ignore_sibling_order():
    labels = LabelTable(["A", "B", "C"])
    left = encode_key(parse_shape("B(C)(A)"), labels)
    right = encode_key(SubtreeShape("B", (SubtreeShape("C"), SubtreeShape("A"))), labels)
    assert left == right
    assert key_size(left) == 3
    assert render_key(left, labels) == "B(A)(C)"


def test_key_round_trip_on_random_shapes():
    rng = np.random.default_rng(11)
    alphabet = ["NP", "VP", "DT", "NN", "S"]
    labels = LabelTable(alphabet)

    def random_shape(size: int) -> SubtreeShape:
        children: list[SubtreeShape] = []
        left = size - 1
        while left:
            part = int(rng.integers(1, left + 1))
            children.append(random_shape(part))
            left -= part
        return SubtreeShape(alphabet[int(rng.integers(len(alphabet)))], tuple(children))

    for _ in range(10_000):
        shape = random_shape(int(rng.integers(1, 7)))
        key = encode_key(shape, labels, mss=6)
        assert decode_key(key, labels) == canonicalize(shape)
        assert len(key) <= max_key_bytes(6)


def test_key_errors():
    labels = LabelTable(["A", "B"])
    with pytest.raises(KeyEncodingError, match="not in the alphabet"):
        encode_key(parse_shape("A(Z)"), labels)
    with pytest.raises(KeyEncodingError, match="more than mss"):
        encode_key(parse_shape("A(B)(B)"), labels, mss=2)
    with pytest.raises(KeyEncodingError):
        decode_key(b"\x01\x00", labels)
    with pytest.raises(KeyEncodingError):
        # Root claims two nodes but only one item follows the header
        decode_key(bytes([2, 0, 0, 0, 0]), labels)


def test_key_bit_bound():
    assert key_bit_bound(3, 4) == 12
    assert key_bit_bound(6, 1) == 18
    assert key_bit_bound(1, 300) == 1 * (1 + 9)


def test_enumeration_counts_on_symmetric_tree():
    tree = _tree(SYMMETRIC_TREE)
    by_mss = {mss: Counter(shape.render() for shape, _ in enumerate_shapes(tree, mss)) for mss in (1, 2, 3, 4)}
    logger.info(f"Shapes per mss: {by_mss}")
    assert by_mss[1] == Counter({"NP": 1, "NN": 3})
    assert by_mss[2] == Counter({"NP": 1, "NN": 3, "NP(NN)": 3})
    assert by_mss[3]["NP(NN)(NN)"] == 3
    assert by_mss[4]["NP(NN)(NN)(NN)"] == 1
    assert sum(by_mss[4].values()) == 11


def test_enumeration_instances_are_aligned():
    tree = _tree("(A (C x) (B y))")
    for shape, instance in enumerate_shapes(tree, 3):
        labels = [tree.by_id[i].label for i in instance.node_ids]
        assert labels == shape.labels()
        assert instance.tid == tree.tid
        assert len(set(instance.node_ids)) == shape.size


def test_enumeration_every_node_set_once():
    tree = _tree("(A (B (C d)) (E f))")
    seen = [frozenset(instance.node_ids) for _, instance in enumerate_shapes(tree, 6)]
    assert len(seen) == len(set(seen))
    # Rooted at A with up to 6 nodes: {A} x ({}, B, BC, BCd) x ({}, E, Ef), all of size <= 6
    assert sum(1 for s in seen if 0 in s) == 4 * 3


def test_enumerate_subtrees_keys_and_mss_check():
    tree = _tree("(A (B c))")
    keys = [key for key, _ in enumerate_subtrees(tree, 2)]
    assert len(keys) == 5
    assert all(key_size(k) <= 2 for k in keys)
    with pytest.raises(MssOutOfRangeError):
        list(enumerate_subtrees(tree, 0))
    with pytest.raises(MssOutOfRangeError):
        list(enumerate_shapes(tree, 7))


def test_is_subtree_of():
    assert is_subtree_of(parse_shape("A(B)"), parse_shape("A(B)(C)"))
    assert is_subtree_of(parse_shape("B(C)"), parse_shape("A(B(C))"))
    assert not is_subtree_of(parse_shape("A(B)(B)"), parse_shape("A(B)"))
    assert not is_subtree_of(parse_shape("A(C)"), parse_shape("A(B(C))"))
    assert is_subtree_of(parse_shape("NP(NN)"), parse_shape("NP(NN)(NN)(NN)"))


def test_automorphisms():
    assert automorphisms(parse_shape("NP(NN)(NN)")) == [(0, 1, 2), (0, 2, 1)]
    assert automorphisms(parse_shape("A(B(C))(B(C))")) == [(0, 1, 2, 3, 4), (0, 3, 4, 1, 2)]
    assert len(automorphisms(parse_shape("NP(NN)(NN)(NN)"))) == 6
    assert automorphisms(parse_shape("A(B)(C)")) == [(0, 1, 2)]


def test_subtree_growth():
    corpus = parse_corpus(SYMMETRIC_TREE)
    growth = subtree_growth(corpus, 2)
    assert growth.keys_by_size == {1: 2, 2: 1}
    assert growth.instances_by_size == {1: 4, 2: 3}


def test_star_pieces_at_the_root():
    tree = _tree("(R a b c d)")
    pieces = rooted_pieces(tree, 3)
    sizes = Counter(piece.shape.size for piece in pieces[tree.root.node_id])
    assert sizes == Counter({1: 1, 2: 4, 3: 6})
    assert all(len(pieces[n.node_id]) == 1 for n in tree.nodes if n.node_id != tree.root.node_id)


@pytest.mark.parametrize("text", ["(A (B (C (D e))))", "(R a b c d e)", "(S (NP (DT a) (NN b)) (VP (VBZ c)))"])
def test_instances_per_size_on_small_trees(text):
    tree = _tree(text)
    n = tree.size
    counts = Counter(shape.size for shape, _ in enumerate_shapes(tree, 4))
    logger.info(f"{text}: {dict(sorted(counts.items()))}")
    assert counts[1] == n
    assert counts[2] == n - 1
    for m in (3, 4):
        assert n - m + 1 <= counts[m] <= comb(n - 1, m - 1)


def test_chain_and_star_reach_the_instance_bounds():
    chain = Counter(shape.size for shape, _ in enumerate_shapes(_tree("(A (B (C (D (E f)))))"), 5))
    star = Counter(shape.size for shape, _ in enumerate_shapes(_tree("(R a b c d e)"), 5))
    assert [chain[m] for m in (2, 3, 4, 5)] == [6 - m + 1 for m in (2, 3, 4, 5)]
    assert [star[m] for m in (2, 3, 4, 5)] == [comb(5, m - 1) for m in (2, 3, 4, 5)]


@pytest.mark.parametrize("mss", [2, 3, 4])
def test_instance_counts_within_bounds_on_generated_trees(synthetic_corpus, mss):
    below = above = 0
    for tree in synthetic_corpus:
        n = tree.size
        count = sum(1 for shape, _ in enumerate_shapes(tree, mss) if shape.size == mss)
        if n < mss:
            assert count == 0
            continue
        below += count - (n - mss + 1)
        above += comb(n - 1, mss - 1) - count
        assert n - mss + 1 <= count <= comb(n - 1, mss - 1)
    logger.info(f"mss={mss}: {below} instances above the chain bound, {above} below the star bound")
