"""
Lattice module for Adjust
A-Y vertex cuts in H1: cut tests, the partial order and the meet
"""

from typing import Iterable

from src.errors import NotACut
from src.graphs.dag import VertexSet, check_vertices, vertex_set
from src.graphs.separation import u_separated, u_separated_sets
from src.graphs.ugraph import UGraph, boundary, connected_component


def is_cut(h: UGraph, a: int, y: int, z: Iterable[int]) -> bool:
    z = vertex_set(z)
    check_vertices(h.n, z)
    if a in z or y in z:
        return False
    return u_separated(h, a, y, z)


def is_minimal_cut(h: UGraph, a: int, y: int, z: Iterable[int]) -> bool:
    """A cut none of whose proper subsets is a cut"""
    z = vertex_set(z)
    if not is_cut(h, a, y, z):
        return False
    return all(not is_cut(h, a, y, tuple(w for w in z if w != v)) for v in z)


def _require_cut(h: UGraph, a: int, y: int, z: VertexSet, name: str):
    if not is_cut(h, a, y, z):
        raise NotACut(f"{name} = {{{', '.join(h.labels_of(z))}}} does not separate "
                      f"{h.labels[a]} from {h.labels[y]}")


def cut_partial_order(h1: UGraph, a: int, y: int, z1: Iterable[int], z2: Iterable[int]) -> bool:
    """z1 ⊴ z2: Y ⊥ z2\\z1 | z1 and A ⊥ z1\\z2 | z2, both in h1"""
    z1, z2 = vertex_set(z1), vertex_set(z2)
    _require_cut(h1, a, y, z1, 'z1')
    _require_cut(h1, a, y, z2, 'z2')
    only_2 = vertex_set(set(z2) - set(z1))
    only_1 = vertex_set(set(z1) - set(z2))
    return u_separated_sets(h1, (y,), only_2, z1) and u_separated_sets(h1, (a,), only_1, z2)


def cut_meet(h1: UGraph, a: int, y: int, z1: Iterable[int], z2: Iterable[int]) -> VertexSet:
    """z1 ∧ z2: boundary of Y's component once z1 ∪ z2 is removed"""
    z1, z2 = vertex_set(z1), vertex_set(z2)
    _require_cut(h1, a, y, z1, 'z1')
    _require_cut(h1, a, y, z2, 'z2')
    return boundary(h1, connected_component(h1, z1 + z2, y))
