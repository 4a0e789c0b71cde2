"""
Efficiency graph module for Adjust
Builds H0 and the adjustment efficiency graph H1 whose A-Y vertex cuts are
exactly the observable dynamic adjustment sets
"""

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

from src.adjustment.criteria import forbidden_set, proper_backdoor_graph
from src.adjustment.query import Query, validate_query
from src.config import Config
from src.errors import InvalidVertex, OverlapError, PreconditionViolation
from src.graphs.dag import Dag, VertexSet, ancestors, check_vertices, vertex_set
from src.graphs.separation import u_separated, u_separated_sets
from src.graphs.transforms import induced_subgraph, moralize, relabel_map
from src.graphs.ugraph import UGraph, reachable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EfficiencyGraph:
    """
    H1 together with the bookkeeping needed to read its cuts as Dag sets

    Attributes:
        h1: the efficiency graph, dense ids with Dag labels
        ignore: Dag ids dropped from H0 (hidden or forbidden ancestors)
        vertex_map: h1 id -> Dag id
        a, y: treatment and outcome as h1 ids
        l: policy covariates as h1 ids
        h0: the moral graph H0, kept only when requested
        h0_map: h0 id -> Dag id (empty when h0 is not kept)
    """

    h1: UGraph
    ignore: VertexSet
    vertex_map: Tuple[int, ...]
    a: int
    y: int
    l: VertexSet
    h0: Optional[UGraph] = None
    h0_map: Tuple[int, ...] = ()

    def to_dag(self, vertices: Iterable[int]) -> VertexSet:
        vs = vertex_set(vertices)
        check_vertices(self.h1.n, vs)
        return vertex_set(self.vertex_map[v] for v in vs)

    def to_h1(self, dag_vertices: Iterable[int]) -> VertexSet:
        dag_vertices = list(dag_vertices)
        position = {d: i for i, d in enumerate(self.vertex_map)}
        missing = [d for d in dag_vertices if d not in position]
        if missing:
            raise InvalidVertex(f"Dag vertices {missing} are not in H1")
        return vertex_set(position[d] for d in dag_vertices)

    def is_cut(self, dag_vertices: Iterable[int]) -> bool:
        """Whether a set of Dag vertices is an A-Y cut of H1 (so lies inside H1)"""
        z = vertex_set(dag_vertices)
        position = {d: i for i, d in enumerate(self.vertex_map)}
        if any(d not in position for d in z):
            return False
        if self.vertex_map[self.a] in z or self.vertex_map[self.y] in z:
            return False
        return u_separated(self.h1, self.a, self.y, [position[d] for d in z])


def _relevant(g: Dag, q: Query) -> VertexSet:
    return ancestors(g, (q.a, q.y) + tuple(q.l))


def build_h0(g: Dag, q: Query) -> UGraph:
    """Moral graph of the proper back-door graph restricted to an({A,Y} ∪ L)"""
    validate_query(g, q)
    h0 = moralize(induced_subgraph(proper_backdoor_graph(g, q), _relevant(g, q)))
    logger.debug(f"🔍 H0 has {h0.n} vertices and {len(h0.edges)} edges")
    return h0


def build_h1(g: Dag, q: Query, retain_h0: Optional[bool] = None) -> EfficiencyGraph:
    """
    Build H1 from H0

    Ignored vertices (ancestors other than A, Y that are unobserved or
    forbidden) are removed; survivors that touch a common connected
    component of H0[ignore] are joined; finally every policy covariate is
    joined to both A and Y.

    Args:
        g: the causal DAG
        q: the query
        retain_h0: keep H0 in the result (defaults to Config.RETAIN_H0)

    Returns:
        EfficiencyGraph with H1 and its id maps
    """
    if retain_h0 is None:
        retain_h0 = Config.RETAIN_H0

    h0 = build_h0(g, q)
    relevant = _relevant(g, q)
    h0_position = relabel_map(relevant)

    outside_n = set(g.vertices) - set(q.n)
    dropped = (outside_n | set(forbidden_set(g, q))) - {q.a, q.y}
    ignore = vertex_set(v for v in relevant if v in dropped)
    survivors = vertex_set(v for v in relevant if v not in dropped)
    h1_position = relabel_map(survivors)

    ignore_h0 = {h0_position[v] for v in ignore}
    edges = set()
    for u, w in h0.edges:
        if u not in ignore_h0 and w not in ignore_h0:
            edges.add((h1_position[relevant[u]], h1_position[relevant[w]]))

    # one clique per component of H0[ignore] over the survivors it touches
    seen = set()
    kept_h0 = set(h0.vertices) - ignore_h0
    for start in sorted(ignore_h0):
        if start in seen:
            continue
        component = reachable(h0, (start,), kept_h0)
        seen |= component
        touching = sorted({h1_position[relevant[w]]
                           for v in component for w in h0.adjacency[v] if w not in ignore_h0})
        edges.update((touching[i], touching[j])
                     for i in range(len(touching)) for j in range(i + 1, len(touching)))

    a, y = h1_position[q.a], h1_position[q.y]
    l = vertex_set(h1_position[v] for v in q.l)
    for v in l:
        edges.add((a, v))
        edges.add((y, v))

    h1 = UGraph.from_edges([g.labels[v] for v in survivors], edges)
    logger.info(f"✅ Built H1: {h1.n} vertices, {len(h1.edges)} edges, {len(ignore)} ignored")

    return EfficiencyGraph(
        h1=h1,
        ignore=ignore,
        vertex_map=survivors,
        a=a,
        y=y,
        l=l,
        h0=h0 if retain_h0 else None,
        h0_map=relevant if retain_h0 else (),
    )


def h1_preserves_separation(eg: EfficiencyGraph, u: int, v: int, w: Iterable[int]) -> Tuple[bool, bool]:
    """
    Separation of u and v given w, in H0 and in H1

    All arguments are h1 ids; the two answers agree whenever L ⊆ w.
    """
    w = vertex_set(w)
    check_vertices(eg.h1.n, (u, v) + w)
    if eg.h0 is None:
        raise PreconditionViolation("H0 was not retained; rebuild with retain_h0=True")
    if not set(eg.l) <= set(w):
        raise PreconditionViolation("The conditioning set must contain every policy covariate")
    if u == v or u in w or v in w:
        raise OverlapError("u and v must be distinct and outside the conditioning set")

    h0_position = {d: i for i, d in enumerate(eg.h0_map)}

    def in_h0(vertices):
        return [h0_position[eg.vertex_map[x]] for x in vertices]

    sep_h0 = u_separated_sets(eg.h0, in_h0((u,)), in_h0((v,)), in_h0(w))
    sep_h1 = u_separated(eg.h1, u, v, w)
    return sep_h0, sep_h1
