from collections import Counter

import pytest
from loguru import logger

from src.corpus.bracketed import parse_corpus
from src.decompose.planner import JoinPredicate, LeafRef, PredicateKind
from src.execution.bindings import MatchSet, NodeBindingTuple
from src.execution.merge_join import (
    merge_bindings,
    nested_loop_join,
    relation_holds,
    structural_merge_join,
)
from src.execution.oracle import oracle_match, oracle_union
from src.query.nodes import MatchBinding
from src.query.parser import parse_query
from src.testkit.fixtures import (
    AGOUTI_QUERY,
    BRANCHING_QUERY,
    SYMMETRIC_TREE,
    agouti_corpus,
    branching_corpus,
)
from src.utils.errors import UnsortedStreamError

# (A (B (C x))): A=(1,4,0) B=(2,3,1) C=(3,2,2) x=(4,1,3)
A, B, C, X = (1, 4, 0), (2, 3, 1), (3, 2, 2), (4, 1, 3)


def _predicate(kind: PredicateKind, upper: int = 0, lower: int = 1) -> JoinPredicate:
    return JoinPredicate(kind, LeafRef(0, 0), LeafRef(1, 0), upper, lower)


def _stream(tid: int, node: int, triples) -> list[NodeBindingTuple]:
    return [NodeBindingTuple(tid, {node: t}) for t in triples]


def _canon(tuples) -> Counter:
    return Counter((t.tid, tuple(sorted(t.bindings.items()))) for t in tuples)


def test_relation_holds():
    assert relation_holds(PredicateKind.PARENT_CHILD, A, B)
    assert not relation_holds(PredicateKind.PARENT_CHILD, A, C)
    assert relation_holds(PredicateKind.ANCESTOR_DESCENDANT, A, X)
    assert not relation_holds(PredicateKind.ANCESTOR_DESCENDANT, C, B)
    assert relation_holds(PredicateKind.SAME_NODE, B, B)
    assert relation_holds(PredicateKind.DISTINCT, B, C)


def test_parent_child_and_descendant_joins():
    upper = _stream(1, 0, [A])
    lower = _stream(1, 1, [B, C, X])
    pc = list(structural_merge_join(upper, lower, _predicate(PredicateKind.PARENT_CHILD)))
    ad = list(structural_merge_join(upper, lower, _predicate(PredicateKind.ANCESTOR_DESCENDANT)))
    assert [t.bindings for t in pc] == [{0: A, 1: B}]
    assert [t.bindings[1] for t in ad] == [B, C, X]


def test_join_orients_inputs():
    # The lower node arrives on the left input
    predicate = _predicate(PredicateKind.PARENT_CHILD)
    out = list(structural_merge_join(_stream(1, 1, [C]), _stream(1, 0, [A, B]), predicate))
    assert [t.bindings for t in out] == [{1: C, 0: B}]


def test_join_skips_unmatched_tids():
    upper = _stream(1, 0, [A]) + _stream(3, 0, [A]) + _stream(5, 0, [A])
    lower = _stream(2, 1, [B]) + _stream(3, 1, [B]) + _stream(4, 1, [B])
    out = list(structural_merge_join(upper, lower, _predicate(PredicateKind.PARENT_CHILD)))
    assert [t.tid for t in out] == [3]


def test_join_with_empty_input():
    assert list(structural_merge_join(_stream(1, 0, [A]), [], _predicate(PredicateKind.PARENT_CHILD))) == []
    assert list(structural_merge_join([], _stream(1, 1, [B]), _predicate(PredicateKind.PARENT_CHILD))) == []


def test_unsorted_input_is_rejected():
    upper = _stream(2, 0, [A]) + _stream(1, 0, [A])
    lower = _stream(1, 1, [B]) + _stream(2, 1, [B])
    with pytest.raises(UnsortedStreamError):
        list(structural_merge_join(upper, lower, _predicate(PredicateKind.PARENT_CHILD)))


def test_shared_nodes_must_agree():
    assert merge_bindings({0: A, 1: B}, {1: B, 2: C}) == {0: A, 1: B, 2: C}
    assert merge_bindings({0: A, 1: B}, {1: C}) is None
    left = [NodeBindingTuple(1, {0: A, 1: B})]
    right = [NodeBindingTuple(1, {1: C, 2: X})]
    assert list(structural_merge_join(left, right, _predicate(PredicateKind.ANCESTOR_DESCENDANT, 0, 2))) == []


def test_filters_are_applied():
    left = _stream(1, 0, [A])
    right = [NodeBindingTuple(1, {1: B, 2: B}), NodeBindingTuple(1, {1: B, 2: C})]
    distinct = _predicate(PredicateKind.DISTINCT, 1, 2)
    out = list(structural_merge_join(left, right, _predicate(PredicateKind.PARENT_CHILD), [distinct]))
    assert [t.bindings[2] for t in out] == [C]


@pytest.mark.parametrize(
    "kind",
    [PredicateKind.PARENT_CHILD, PredicateKind.ANCESTOR_DESCENDANT, PredicateKind.DISTINCT, PredicateKind.SAME_NODE],
)
def test_merge_join_equals_nested_loop(synthetic_corpus, kind):
    trees = synthetic_corpus.trees[:40]
    upper_label, lower_label = "S", "NP"
    upper: list[NodeBindingTuple] = []
    lower: list[NodeBindingTuple] = []
    for tree in trees:
        for node in tree.nodes:
            triple = (node.pre, node.post, node.level)
            if node.label == upper_label:
                upper.append(NodeBindingTuple(tree.tid, {0: triple}))
            if kind is PredicateKind.SAME_NODE:
                lower.append(NodeBindingTuple(tree.tid, {0: triple, 5: (0, 0, 0)}))
            elif node.label in (upper_label, lower_label):
                lower.append(NodeBindingTuple(tree.tid, {1: triple}))
    predicate = _predicate(kind, 0, 0 if kind is PredicateKind.SAME_NODE else 1)
    merged = _canon(structural_merge_join(upper, lower, predicate))
    reference = _canon(nested_loop_join(upper, lower, predicate))
    logger.info(f"{kind.value}: {sum(merged.values())} joined tuples")
    assert merged == reference
    assert sum(merged.values()) > 0


def test_oracle_small_cases():
    assert len(oracle_match(parse_query("A"), parse_corpus("(A (A))").trees[0])) == 2
    assert len(oracle_match(parse_query("A(B)(B)"), parse_corpus("(A (B))").trees[0])) == 0
    assert len(oracle_match(parse_query("A(B)(B)"), parse_corpus("(A (B) (B))").trees[0])) == 1
    assert len(oracle_match(parse_query("A(//C)"), parse_corpus("(A (B (C)))").trees[0])) == 1
    assert len(oracle_match(parse_query("A(C)"), parse_corpus("(A (B (C)))").trees[0])) == 0


def test_oracle_binds_the_query_root():
    matches = oracle_match(parse_query("NP(NN)(NN)"), parse_corpus(SYMMETRIC_TREE).trees[0])
    assert list(matches) == [MatchBinding(1, 1, 4, 0)]
    assert matches.lines() == ["1\t1\t4\t0"]


def test_oracle_on_fixtures():
    assert oracle_union(parse_query(AGOUTI_QUERY), agouti_corpus()).tids() == [1]
    assert oracle_union(parse_query(BRANCHING_QUERY), branching_corpus()).tids() == [1]


def test_match_set_behaves_like_a_set():
    a = MatchSet([MatchBinding(2, 1, 3, 0), MatchBinding(1, 4, 1, 2), MatchBinding(2, 1, 3, 0)])
    assert len(a) == 2
    assert [b.tid for b in a] == [1, 2]
    b = MatchSet([MatchBinding(1, 4, 1, 2)])
    assert a.difference(b) == MatchSet([MatchBinding(2, 1, 3, 0)])
    assert MatchBinding(1, 4, 1, 2) in a
    assert a != b
