from .anomaly import AnomalyWitness, detect_anomaly, has_root_partners, is_root_split_cover
from .builder import CoverBuilder, assign, is_full_cover, min_rc, optimal_cover
from .cover import Cover, CoverKind, CoverSubtree
from .planner import (
    JoinPlan,
    JoinPredicate,
    LeafRef,
    PlanLeaf,
    PredicateKind,
    count_joins,
    plan_query,
    root_split_pins,
)

__all__ = [
    "AnomalyWitness",
    "Cover",
    "CoverBuilder",
    "CoverKind",
    "CoverSubtree",
    "JoinPlan",
    "JoinPredicate",
    "LeafRef",
    "PlanLeaf",
    "PredicateKind",
    "assign",
    "count_joins",
    "detect_anomaly",
    "has_root_partners",
    "is_full_cover",
    "is_root_split_cover",
    "min_rc",
    "optimal_cover",
    "plan_query",
    "root_split_pins",
]
