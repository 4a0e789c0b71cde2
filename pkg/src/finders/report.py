"""
Report module for Adjust
Runs every finder on one query, sharing a single H1 build
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional

from src.adjustment.criteria import ValidityCertificate, canonical_adjustment, is_adjustment_set
from src.adjustment.efficiency_graph import EfficiencyGraph, build_h1
from src.adjustment.query import Query, validate_query
from src.finders.base_finder import CutResult
from src.finders.global_finder import GlobalOptimalFinder
from src.finders.minimal_finder import OptimalMinimalFinder
from src.finders.minimum_finder import OptimalMinimumFinder
from src.graphs.dag import Dag, VertexSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AdjustmentReport:
    query: Query
    admissible: bool
    canonical: VertexSet
    canonical_certificate: ValidityCertificate
    o: CutResult
    o_min: CutResult
    o_m: CutResult
    efficiency_graph: Optional[EfficiencyGraph] = None

    def to_dict(self, g: Dag) -> Dict[str, object]:
        return {
            'query': self.query.describe(g),
            'admissible': self.admissible,
            'canonical': {
                'set': list(g.labels_of(self.canonical)),
                'valid': self.canonical_certificate.valid,
                'violated_clause': self.canonical_certificate.violated_clause.value,
            },
            'ignore': list(g.labels_of(self.efficiency_graph.ignore)) if self.efficiency_graph else [],
            'results': {
                'o': self.o.to_dict(),
                'o-min': self.o_min.to_dict(),
                'o-m': self.o_m.to_dict(),
            },
        }


def analyze(g: Dag, q: Query) -> AdjustmentReport:
    """Canonical set, admissibility and all three optimal sets"""
    validate_query(g, q)
    canonical = canonical_adjustment(g, q)
    certificate = is_adjustment_set(g, q, canonical)

    eg = build_h1(g, q) if certificate.valid else None
    report = AdjustmentReport(
        query=q,
        admissible=certificate.valid,
        canonical=canonical,
        canonical_certificate=certificate,
        o=GlobalOptimalFinder().find(g, q, eg),
        o_min=OptimalMinimalFinder().find(g, q, eg),
        o_m=OptimalMinimumFinder().find(g, q, eg),
        efficiency_graph=eg,
    )
    logger.info(f"📊 Admissible: {report.admissible}, O={report.o.render()}, "
                f"O_min={report.o_min.render()}, O_m={report.o_m.render()}")
    return report
