from .bindings import MatchSet, NodeBindingTuple, leaf_tuples
from .engine import QueryEngine, QueryResult, execute_plan
from .merge_join import merge_bindings, nested_loop_join, predicate_holds, relation_holds, structural_merge_join
from .oracle import oracle_match, oracle_union

__all__ = [
    "MatchSet",
    "NodeBindingTuple",
    "QueryEngine",
    "QueryResult",
    "execute_plan",
    "leaf_tuples",
    "merge_bindings",
    "nested_loop_join",
    "oracle_match",
    "oracle_union",
    "predicate_holds",
    "relation_holds",
    "structural_merge_join",
]
