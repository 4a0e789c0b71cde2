"""
Criteria module for Adjust
Causal nodes, forbidden set, proper back-door graph and adjustment-set validity
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from src.adjustment.query import Query, validate_query
from src.errors import InvalidAdjustmentSet, OverlapError, PreconditionViolation
from src.graphs.dag import Dag, VertexSet, ancestors, check_vertices, descendants, vertex_set
from src.graphs.separation import d_separated

logger = logging.getLogger(__name__)


class Clause(Enum):
    """Validity clauses, checked in the order NotBetweenLandN, IntersectsForbidden, SeparationFails"""
    NOT_BETWEEN_L_AND_N = "NotBetweenLandN"
    INTERSECTS_FORBIDDEN = "IntersectsForbidden"
    SEPARATION_FAILS = "SeparationFails"
    NONE = "None"


class Comparison(Enum):
    G_NOT_WORSE = "GNotWorse"
    INCOMPARABLE = "Incomparable"


@dataclass(frozen=True)
class ValidityCertificate:
    valid: bool
    violated_clause: Clause = Clause.NONE

    def __post_init__(self):
        if self.valid != (self.violated_clause is Clause.NONE):
            raise ValueError("A certificate is valid exactly when no clause is violated")


def causal_nodes(g: Dag, q: Query) -> VertexSet:
    """cn(A,Y,G) = (de(A) ∩ an(Y)) \\ {A}"""
    validate_query(g, q)
    on_causal_paths = set(descendants(g, (q.a,))) & set(ancestors(g, (q.y,)))
    return vertex_set(on_causal_paths - {q.a})


def forbidden_set(g: Dag, q: Query) -> VertexSet:
    """forb(A,Y,G) = de(cn) ∪ {A}"""
    return vertex_set(descendants(g, causal_nodes(g, q)) + (q.a,))


def proper_backdoor_graph(g: Dag, q: Query) -> Dag:
    """G minus the first edge A→c of every causal path from A to Y"""
    cn = set(causal_nodes(g, q))
    first_edges = [(q.a, c) for c in g.children[q.a] if c in cn]
    logger.debug(f"🔄 Proper back-door graph drops {[(g.labels[u], g.labels[v]) for u, v in first_edges]}")
    return g.without_edges(first_edges)


class AdjustmentChecker:
    """Validity checks for many candidate sets of one query"""

    def __init__(self, g: Dag, q: Query):
        validate_query(g, q)
        self.g = g
        self.q = q
        self.forbidden = set(forbidden_set(g, q))
        self.backdoor = proper_backdoor_graph(g, q)

    def certificate(self, z: Iterable[int]) -> ValidityCertificate:
        """
        Decide whether z is an L-N dynamic adjustment set

        Clauses are checked in the order L ⊆ z ⊆ N, z ∩ forb = ∅, then
        Y ⫫ A | z in the proper back-door graph; the first failure is recorded.
        """
        z = vertex_set(z)
        check_vertices(self.g.n, z)
        q = self.q
        if q.a in z or q.y in z:
            raise OverlapError("Candidate set must not contain the exposure or the outcome")

        members = set(z)
        if not set(q.l) <= members or not members <= set(q.n):
            return ValidityCertificate(False, Clause.NOT_BETWEEN_L_AND_N)
        if members & self.forbidden:
            return ValidityCertificate(False, Clause.INTERSECTS_FORBIDDEN)
        if not d_separated(self.backdoor, (q.y,), (q.a,), z):
            return ValidityCertificate(False, Clause.SEPARATION_FAILS)
        return ValidityCertificate(True)


def is_adjustment_set(g: Dag, q: Query, z: Iterable[int]) -> ValidityCertificate:
    return AdjustmentChecker(g, q).certificate(z)


def canonical_adjustment(g: Dag, q: Query) -> VertexSet:
    """[an({A,Y} ∪ L) ∩ N] \\ forb, a candidate only"""
    relevant = set(ancestors(g, (q.a, q.y) + tuple(q.l))) & set(q.n)
    return vertex_set(relevant - set(forbidden_set(g, q)))


def exists_adjustment(g: Dag, q: Query) -> bool:
    """True iff (L, N) is an admissible pair"""
    admissible = is_adjustment_set(g, q, canonical_adjustment(g, q)).valid
    if not admissible:
        logger.info(f"⚠️ No adjustment set exists for {g.labels[q.a]} -> {g.labels[q.y]}")
    return admissible


def graphical_compare(g: Dag, q: Query, zg: Iterable[int], zb: Iterable[int]) -> Comparison:
    """
    Graphical certificate that zg never yields a larger variance than zb

    Returns GNotWorse iff A ⫫ zg\\zb | zb and Y ⫫ zb\\zg | zg ∪ {A} in G.
    """
    zg, zb = vertex_set(zg), vertex_set(zb)
    for name, z in (('zg', zg), ('zb', zb)):
        certificate = is_adjustment_set(g, q, z)
        if not certificate.valid:
            raise InvalidAdjustmentSet(f"{name} = {set(g.labels_of(z))} fails: {certificate.violated_clause.value}")

    only_g = vertex_set(set(zg) - set(zb))
    only_b = vertex_set(set(zb) - set(zg))
    if d_separated(g, (q.a,), only_g, zb) and d_separated(g, (q.y,), only_b, zg + (q.a,)):
        return Comparison.G_NOT_WORSE
    return Comparison.INCOMPARABLE


def optimal_full_observation(g: Dag, q: Query) -> VertexSet:
    """pa(cn) \\ forb ∪ L, the globally optimal set when nothing is hidden"""
    validate_query(g, q)
    if set(q.n) != set(g.vertices):
        raise PreconditionViolation("The closed form needs every vertex observed (N = V)")
    parents = {p for c in causal_nodes(g, q) for p in g.parents_of(c)}
    return vertex_set((parents - set(forbidden_set(g, q))) | set(q.l))
