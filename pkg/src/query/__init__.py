from .layout import QueryTree, canonical_query
from .nodes import EdgeType, MatchBinding, QueryNode, query_size
from .parser import parse_query

__all__ = [
    "EdgeType",
    "MatchBinding",
    "QueryNode",
    "QueryTree",
    "canonical_query",
    "parse_query",
    "query_size",
]
