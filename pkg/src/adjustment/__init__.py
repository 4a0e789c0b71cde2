# Adjustment core: queries, validity criteria and the efficiency graph
from src.adjustment.criteria import (
    AdjustmentChecker,
    Clause,
    Comparison,
    ValidityCertificate,
    canonical_adjustment,
    causal_nodes,
    exists_adjustment,
    forbidden_set,
    graphical_compare,
    is_adjustment_set,
    optimal_full_observation,
    proper_backdoor_graph,
)
from src.adjustment.efficiency_graph import EfficiencyGraph, build_h0, build_h1, h1_preserves_separation
from src.adjustment.query import Query, make_query, validate_query
