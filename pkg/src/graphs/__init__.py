# Graph core: DAGs, undirected graphs, moralization and separation
from src.graphs.dag import Dag, VertexSet, ancestors, descendants, vertex_set
from src.graphs.separation import d_separated, u_separated, u_separated_sets
from src.graphs.transforms import induced_subgraph, moralize, relabel_map
from src.graphs.ugraph import UGraph, boundary, connected_component, reachable

__all__ = [
    'Dag', 'UGraph', 'VertexSet', 'vertex_set',
    'ancestors', 'descendants', 'induced_subgraph', 'moralize', 'relabel_map',
    'u_separated', 'u_separated_sets', 'd_separated',
    'connected_component', 'boundary', 'reachable',
]
