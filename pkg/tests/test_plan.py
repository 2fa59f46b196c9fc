import pytest
from loguru import logger

from src.decompose.planner import PredicateKind, count_joins, plan_query, root_split_pins
from src.index.scheme import CodingScheme
from src.models.records import QuerySpec
from src.query.layout import QueryTree
from src.query.parser import parse_query
from src.testkit.fixtures import AGOUTI_QUERY
from src.testkit.queries import gen_queries
from src.utils.errors import MssOutOfRangeError

QUERIES = [
    "NP",
    "NP(DT)(NN)",
    "S(NP(NNS(agouti)))(VP(VBZ(is)))",
    "A(B(C(D)(E)(F)))",
    "VP(VBD)(NP(DT)(JJ)(NN))(PP(IN)(NP(NNP)))",
    "S(NP)(VP(NP)(NP))",
]


@pytest.mark.parametrize("text", QUERIES)
@pytest.mark.parametrize("scheme", [CodingScheme.ROOT_SPLIT, CodingScheme.SUBTREE_INTERVAL])
def test_one_join_per_edge_at_mss_one(text, scheme):
    q = parse_query(text)
    plan = plan_query(q, 1, scheme)
    assert len(plan.leaves) == q.size
    assert count_joins(plan) == q.size - 1


def test_agouti_root_split_plan():
    plan = plan_query(parse_query(AGOUTI_QUERY), 3, "root-split")
    for line in plan.explain():
        logger.info(line)
    assert count_joins(plan) == 4
    assert all(leaf.bound == (leaf.subtree.root,) for leaf in plan.leaves)
    kinds = [p.kind for p in plan.predicates]
    assert kinds.count(PredicateKind.SAME_NODE) == 1
    assert kinds.count(PredicateKind.PARENT_CHILD) == 3
    assert kinds.count(PredicateKind.DISTINCT) == 1
    assert sorted(plan.order) == list(range(5))


def test_explain_lines():
    lines = plan_query(parse_query(AGOUTI_QUERY), 3, CodingScheme.ROOT_SPLIT).explain()
    assert lines[0].startswith("query: S(NP(NNS(agouti)))(VP(NP(DT(a))(NN))(VBZ(is)))")
    assert "scheme=root-split mss=3" in lines[0]
    assert lines[1].startswith("cover (root-split, 5 subtrees): ")
    assert sum(1 for line in lines if line.strip().startswith("L")) == 5
    assert lines[-1].endswith("joins=4")


def test_interval_plan_binds_every_piece_node():
    plan = plan_query(parse_query("A(B)(B)"), 2, CodingScheme.SUBTREE_INTERVAL)
    assert [leaf.subtree.text for leaf in plan.leaves] == ["A(B)", "A(B)"]
    assert [leaf.bound for leaf in plan.leaves] == [(0, 1), (0, 2)]
    kinds = sorted(p.kind.value for p in plan.predicates)
    assert kinds == ["distinct", "same-node"]
    distinct = next(p for p in plan.predicates if p.kind is PredicateKind.DISTINCT)
    assert (distinct.left_node, distinct.right_node) == (1, 2)


def test_parent_child_predicate_between_pieces():
    plan = plan_query(parse_query("A(B)(C(D))"), 2, CodingScheme.FILTER_BASED)
    assert sorted(leaf.subtree.text for leaf in plan.leaves) == ["A(B)", "C(D)"]
    (predicate,) = plan.predicates
    assert predicate.kind is PredicateKind.PARENT_CHILD
    assert (predicate.left_node, predicate.right_node) == (0, 2)


def test_descendant_edges_become_predicates():
    plan = plan_query(parse_query("A(B)(//C)"), 2, CodingScheme.SUBTREE_INTERVAL)
    ad = [p for p in plan.predicates if p.kind is PredicateKind.ANCESTOR_DESCENDANT]
    assert len(ad) == 1
    assert (ad[0].left_node, ad[0].right_node) == (0, 2)


def test_order_follows_estimates():
    estimates = {"A(B)": 5, "C(D)": 50}
    plan = plan_query(parse_query("A(B)(C(D))"), 2, CodingScheme.SUBTREE_INTERVAL, lambda s: estimates[s.render()])
    assert plan.leaves[plan.order[0]].subtree.text == "A(B)"
    assert [leaf.estimate for leaf in plan.leaves] == [estimates[leaf.subtree.text] for leaf in plan.leaves]


def test_root_split_pins():
    tree = QueryTree.from_query(parse_query(AGOUTI_QUERY))
    assert root_split_pins(tree) == {i for i, label in enumerate(tree.labels) if label == "NP"}
    tree = QueryTree.from_query(parse_query("A(B(//C))(A)"))
    # Canonical ids: A=0, A=1, B=2, C=3; A twice, and B has a // child
    assert tree.labels == ("A", "A", "B", "C")
    assert root_split_pins(tree) == {0, 1, 2}


def test_root_split_plan_with_descendant_edge():
    plan = plan_query(parse_query("S(NP)(//NN)"), 3, CodingScheme.ROOT_SPLIT)
    roots = sorted(leaf.subtree.root for leaf in plan.leaves)
    assert roots == [0, 2]
    (ad,) = [p for p in plan.predicates if p.kind is PredicateKind.ANCESTOR_DESCENDANT]
    assert (ad.left_node, ad.right_node) == (0, 2)


def test_plan_rejects_bad_arguments():
    with pytest.raises(MssOutOfRangeError):
        plan_query(parse_query("A"), 0, CodingScheme.ROOT_SPLIT)
    with pytest.raises(ValueError):
        plan_query(parse_query("A"), 2, "interval")


def test_generated_queries_join_once_per_edge(synthetic_corpus):
    spec = QuerySpec(seed=8, sizes=list(range(1, 11)), descendant_ratio=0.2)
    queries = gen_queries(synthetic_corpus, spec)[:20]
    assert len(queries) == 20
    for q in queries:
        for scheme in (CodingScheme.ROOT_SPLIT, CodingScheme.SUBTREE_INTERVAL):
            assert count_joins(plan_query(q, 1, scheme)) == q.size - 1, q.render()
