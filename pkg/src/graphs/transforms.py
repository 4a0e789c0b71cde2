"""
Transforms module for Adjust
Induced subgraphs and moralization
"""

from typing import Dict, Iterable, Union

from src.graphs.dag import Dag, check_vertices, vertex_set
from src.graphs.ugraph import UGraph


def relabel_map(keep: Iterable[int]) -> Dict[int, int]:
    """Old id -> new id after restricting to keep (ascending order preserved)"""
    return {old: new for new, old in enumerate(vertex_set(keep))}


def induced_subgraph(g: Union[Dag, UGraph], keep: Iterable[int]) -> Union[Dag, UGraph]:
    """
    Restrict g to keep

    Vertex ids are renumbered densely in ascending order of the kept ids
    (see relabel_map); labels and hidden flags travel with their vertices.
    """
    kept = vertex_set(keep)
    check_vertices(g.n, kept)
    position = relabel_map(kept)
    labels = [g.labels[v] for v in kept]

    if isinstance(g, Dag):
        edges = [(position[u], position[c]) for u in kept for c in g.children[u] if c in position]
        hidden = [position[v] for v in g.hidden if v in position]
        return Dag.from_edges(labels, edges, hidden)

    edges = [(position[u], position[w]) for u in kept for w in g.adjacency[u] if w in position and u < w]
    return UGraph.from_edges(labels, edges)


def moralize(g: Dag) -> UGraph:
    """Drop directions and marry every pair of co-parents"""
    edges = []
    for v in range(g.n):
        pa = g.parents[v]
        edges.extend((p, v) for p in pa)
        edges.extend((pa[i], pa[j]) for i in range(len(pa)) for j in range(i + 1, len(pa)))
    return UGraph.from_edges(g.labels, edges)
