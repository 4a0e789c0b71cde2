"""
Minimum Finder module for Adjust
O_m: on every path of a maximum disjoint bundle, the minimum-cut vertex closest to Y
"""

import logging
from typing import Optional

from src.adjustment.efficiency_graph import EfficiencyGraph
from src.adjustment.query import Query
from src.cuts.flow import FlowNetwork
from src.errors import NotACut
from src.finders.base_finder import BaseFinder, CutKind, CutResult
from src.graphs.dag import Dag, VertexSet, vertex_set

logger = logging.getLogger(__name__)


class OptimalMinimumFinder(BaseFinder):
    """Scan each disjoint path from the Y end for the first vertex of some minimum cut"""

    def __init__(self):
        super().__init__(CutKind.OPTIMAL_MINIMUM)
        self._flow: Optional[int] = None

    def _compute(self, eg: EfficiencyGraph) -> VertexSet:
        network = FlowNetwork(eg.h1, eg.a, eg.y)
        bundle = network.paths()
        self._flow = network.flow
        logger.debug(f"🔍 {bundle.size} disjoint paths in H1")

        chosen = set()
        for interior in bundle.interiors():
            for v in reversed(interior):
                if not network.augmentable_through(v):
                    chosen.add(v)
                    break
            else:
                raise NotACut(f"No minimum-cut vertex on path {', '.join(eg.h1.labels_of(interior))}")
        return vertex_set(chosen)

    def _decorate(self, g: Dag, q: Query, result: CutResult) -> CutResult:
        # one vertex per path of a maximum bundle
        if self._flow != len(result.vertices):
            raise NotACut(f"{result.render()} has {len(result.vertices)} vertices, max flow is {self._flow}")
        return self._with(result, cut_size=self._flow)


def find_opt_minimum(g: Dag, q: Query, eg: Optional[EfficiencyGraph] = None) -> CutResult:
    return OptimalMinimumFinder().find(g, q, eg)
