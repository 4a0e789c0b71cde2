"""
Query module for Adjust
The (A, Y, L, N) tuple that defines one adjustment problem
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional

from src.errors import InclusionViolation
from src.graphs.dag import Dag, VertexSet, ancestors, check_vertices, descendants, vertex_set

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Query:
    """
    One adjustment problem on a DAG

    Attributes:
        a: treatment vertex
        y: outcome vertex
        l: policy covariates (the regime may depend on them)
        n: observable vertices
    """

    a: int
    y: int
    l: VertexSet
    n: VertexSet

    @classmethod
    def from_labels(cls, g: Dag, exposure: str, outcome: str,
                    policy: Iterable[str] = (), observed: Optional[Iterable[str]] = None) -> 'Query':
        n = None if observed is None else g.ids_of(observed)
        return make_query(g, g.index(exposure), g.index(outcome), g.ids_of(policy), n)

    def describe(self, g: Dag) -> Dict[str, object]:
        """Label view used in reports"""
        return {
            'exposure': g.labels[self.a],
            'outcome': g.labels[self.y],
            'policy': list(g.labels_of(self.l)),
            'observed': list(g.labels_of(self.n)),
        }


def inclusion_problems(g: Dag, a: int, y: int, l: VertexSet, n: VertexSet) -> List[str]:
    """Every inclusion assumption the tuple violates, in a fixed order"""
    label = g.labels
    problems = []

    if a == y:
        problems.append(f"exposure and outcome must differ (both {label[a]})")
    elif a not in ancestors(g, (y,)):
        problems.append(f"{label[a]} is not an ancestor of {label[y]}")

    observed = set(n)
    unobserved = [v for v in vertex_set((a, y) + tuple(l)) if v not in observed]
    if unobserved:
        problems.append(f"not in the observed set: {', '.join(label[v] for v in unobserved)}")

    after_a = set(descendants(g, (a,)))
    descending = [v for v in l if v in after_a]
    if descending:
        problems.append(f"policy covariates descend from {label[a]}: {', '.join(label[v] for v in descending)}")

    hidden = [v for v in n if g.is_hidden(v)]
    if hidden:
        problems.append(f"observed set lists hidden vertices: {', '.join(label[v] for v in hidden)}")

    return problems


def make_query(g: Dag, a: int, y: int, l: Iterable[int] = (),
               n: Optional[Iterable[int]] = None) -> Query:
    """
    Build a Query, checking the inclusion assumptions

    Args:
        g: the causal DAG
        a: treatment vertex id
        y: outcome vertex id
        l: policy covariate ids
        n: observable ids, defaulting to every vertex not flagged hidden

    Returns:
        The validated query

    Raises:
        InclusionViolation listing every failed assumption together
    """
    l = vertex_set(l)
    n = g.observed if n is None else vertex_set(n)
    check_vertices(g.n, (a, y) + l + n)

    problems = inclusion_problems(g, a, y, l, n)
    if problems:
        logger.debug(f"❌ Query rejected: {problems}")
        raise InclusionViolation(problems)
    return Query(a, y, l, n)


def validate_query(g: Dag, q: Query) -> None:
    """Re-check a query against the graph it is used with"""
    check_vertices(g.n, (q.a, q.y) + tuple(q.l) + tuple(q.n))
    problems = inclusion_problems(g, q.a, q.y, q.l, q.n)
    if problems:
        raise InclusionViolation(problems)
