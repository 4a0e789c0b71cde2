"""
Global Finder module for Adjust
O = nb_H1(Y), with the conditions under which it is globally optimal
"""

from typing import Optional

from src.adjustment.efficiency_graph import EfficiencyGraph
from src.adjustment.query import Query
from src.finders.base_finder import BaseFinder, CutKind, CutResult
from src.graphs.dag import Dag, VertexSet, ancestors

CONDITION_ANCESTRAL = "N ⊆ an({A,Y} ∪ L)"
CONDITION_FULLY_OBSERVED = "N = V"


def optimality_condition(g: Dag, q: Query) -> Optional[str]:
    """The sufficient condition for global optimality that holds, if any"""
    if set(q.n) <= set(ancestors(g, (q.a, q.y) + tuple(q.l))):
        return CONDITION_ANCESTRAL
    if set(q.n) == set(g.vertices):
        return CONDITION_FULLY_OBSERVED
    return None


class GlobalOptimalFinder(BaseFinder):
    """Neighbours of Y in H1"""

    def __init__(self):
        super().__init__(CutKind.GLOBAL)

    def _compute(self, eg: EfficiencyGraph) -> VertexSet:
        return eg.h1.neighbors(eg.y)

    def _decorate(self, g: Dag, q: Query, result: CutResult) -> CutResult:
        condition = optimality_condition(g, q)
        return self._with(result, global_guaranteed=condition is not None, condition=condition)


def find_opt(g: Dag, q: Query, eg: Optional[EfficiencyGraph] = None) -> CutResult:
    return GlobalOptimalFinder().find(g, q, eg)
