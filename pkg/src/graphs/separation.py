"""
Separation module for Adjust
Vertex separation in undirected graphs and d-separation in DAGs
"""

from typing import Iterable

from src.errors import OverlapError
from src.graphs.dag import Dag, ancestors, check_vertices, vertex_set
from src.graphs.transforms import induced_subgraph, moralize, relabel_map
from src.graphs.ugraph import UGraph, reachable


def u_separated_sets(h: UGraph, sources: Iterable[int], targets: Iterable[int],
                     z: Iterable[int]) -> bool:
    """True iff every path from sources to targets in h meets z"""
    sources, targets, z = vertex_set(sources), vertex_set(targets), vertex_set(z)
    check_vertices(h.n, sources + targets + z)
    blocked = set(z)
    if blocked.intersection(sources) or blocked.intersection(targets):
        raise OverlapError("Separating set meets the sets it separates")
    if not sources or not targets:
        return True
    if set(sources).intersection(targets):
        return False

    reached = reachable(h, sources, blocked)
    return not any(t in reached for t in targets)


def u_separated(h: UGraph, a: int, y: int, z: Iterable[int]) -> bool:
    """True iff every a-y path in h intersects z"""
    check_vertices(h.n, (a, y))
    if a == y:
        raise OverlapError("Separation needs two distinct vertices")
    return u_separated_sets(h, (a,), (y,), z)


def d_separated(g: Dag, u: Iterable[int], w: Iterable[int], z: Iterable[int]) -> bool:
    """
    u ⫫ w | z in g

    Moralizes the ancestral graph of u ∪ w ∪ z and checks that z separates
    u from w there.
    """
    u, w, z = vertex_set(u), vertex_set(w), vertex_set(z)
    check_vertices(g.n, u + w + z)
    if set(u) & set(w) or set(u) & set(z) or set(w) & set(z):
        raise OverlapError("d-separation needs pairwise disjoint sets")
    if not u or not w:
        return True

    keep = ancestors(g, u + w + z)
    position = relabel_map(keep)
    moral = moralize(induced_subgraph(g, keep))
    return u_separated_sets(moral,
                            [position[v] for v in u],
                            [position[v] for v in w],
                            [position[v] for v in z])
