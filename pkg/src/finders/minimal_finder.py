"""
Minimal Finder module for Adjust
O_min: the neighbours of Y that A reaches without passing another neighbour of Y
"""

from typing import Optional

from src.adjustment.efficiency_graph import EfficiencyGraph
from src.adjustment.query import Query
from src.finders.base_finder import BaseFinder, CutKind, CutResult
from src.graphs.dag import Dag, VertexSet, vertex_set


class OptimalMinimalFinder(BaseFinder):
    """Depth-first search from A that stops at nb_H1(Y)"""

    def __init__(self):
        super().__init__(CutKind.OPTIMAL_MINIMAL)

    def _compute(self, eg: EfficiencyGraph) -> VertexSet:
        h = eg.h1
        stop = set(h.adjacency[eg.y])
        visited = {eg.a}
        stack = [eg.a]
        found = set()
        while stack:
            v = stack.pop()
            for w in reversed(h.adjacency[v]):
                if w in visited or w == eg.y:
                    continue
                visited.add(w)
                if w in stop:
                    found.add(w)
                else:
                    stack.append(w)
        return vertex_set(found)


def find_opt_minimal(g: Dag, q: Query, eg: Optional[EfficiencyGraph] = None) -> CutResult:
    return OptimalMinimalFinder().find(g, q, eg)
