"""
Base Finder module for Adjust
Provides the common query/admissibility/H1 pipeline for all optimal-set finders
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, Optional, Tuple

from src.adjustment.criteria import exists_adjustment
from src.adjustment.efficiency_graph import EfficiencyGraph, build_h1
from src.adjustment.query import Query, validate_query
from src.graphs.dag import Dag, VertexSet

logger = logging.getLogger(__name__)

NO_ADMISSIBLE_SET = "NO-ADMISSIBLE-SET"


class CutKind(Enum):
    GLOBAL = "Global"
    OPTIMAL_MINIMAL = "OptimalMinimal"
    OPTIMAL_MINIMUM = "OptimalMinimum"


@dataclass(frozen=True)
class CutResult:
    """
    One optimal set, or the distinguished "no admissible set" state

    vertices is None exactly when no L-N adjustment set exists; an empty
    tuple means the empty set is optimal.
    """

    kind: CutKind
    vertices: Optional[VertexSet]
    labels: Optional[Tuple[str, ...]]
    global_guaranteed: Optional[bool] = None
    condition: Optional[str] = None
    cut_size: Optional[int] = None

    @property
    def admissible(self) -> bool:
        return self.vertices is not None

    @classmethod
    def no_admissible_set(cls, kind: CutKind) -> 'CutResult':
        return cls(kind, None, None)

    def render(self) -> str:
        if not self.admissible:
            return NO_ADMISSIBLE_SET
        return "{" + ", ".join(self.labels) + "}"

    def to_dict(self) -> Dict[str, object]:
        data: Dict[str, object] = {
            'kind': self.kind.value,
            'admissible': self.admissible,
            'set': list(self.labels) if self.admissible else None,
        }
        if self.kind is CutKind.GLOBAL:
            data['global_guaranteed'] = self.global_guaranteed
            data['condition'] = self.condition
        if self.kind is CutKind.OPTIMAL_MINIMUM:
            data['cut_size'] = self.cut_size
        return data


class BaseFinder(ABC):
    """Abstract base class for the optimal-set finders"""

    def __init__(self, kind: CutKind):
        self.kind = kind

    def find(self, g: Dag, q: Query, eg: Optional[EfficiencyGraph] = None) -> CutResult:
        """
        Compute this finder's optimal set

        Args:
            g: the causal DAG
            q: the query
            eg: a prebuilt efficiency graph for (g, q), reused when given

        Returns:
            CutResult in Dag ids and labels, or the no-admissible-set state
        """
        logger.info(f"🔄 Computing {self.kind.value} set for {g.labels[q.a]} -> {g.labels[q.y]}")
        validate_query(g, q)

        if not exists_adjustment(g, q):
            logger.warning(f"⚠️ {self.kind.value}: {NO_ADMISSIBLE_SET}")
            return CutResult.no_admissible_set(self.kind)

        if eg is None:
            eg = build_h1(g, q)

        vertices = eg.to_dag(self._compute(eg))
        result = self._decorate(g, q, CutResult(self.kind, vertices, g.labels_of(vertices)))
        logger.info(f"✅ {self.kind.value}: {result.render()}")
        return result

    @abstractmethod
    def _compute(self, eg: EfficiencyGraph) -> VertexSet:
        """Return the optimal cut as h1 ids"""
        pass

    def _decorate(self, g: Dag, q: Query, result: CutResult) -> CutResult:
        """Hook for kind-specific fields"""
        return result

    @staticmethod
    def _with(result: CutResult, **changes) -> CutResult:
        return replace(result, **changes)
