"""
Undirected graph module for Adjust
Moral graphs, H0 and H1 live here, together with component queries
"""

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Set, Tuple

from src.errors import GraphError, InvalidVertex, OverlapError
from src.graphs.dag import VertexSet, check_vertices, label_index, vertex_set


@dataclass(frozen=True)
class UGraph:
    """Undirected simple graph over dense vertex ids with labels"""

    labels: Tuple[str, ...]
    adjacency: Tuple[VertexSet, ...]
    _index: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, '_index', label_index(self.labels))

    @classmethod
    def from_edges(cls, labels: Sequence[str], edges: Iterable[Tuple[int, int]]) -> 'UGraph':
        labels = tuple(labels)
        n = len(labels)
        neighbors: List[Set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            check_vertices(n, (u, v))
            if u == v:
                raise GraphError(f"Self-loop on {labels[u]}")
            neighbors[u].add(v)
            neighbors[v].add(u)
        return cls(labels, tuple(vertex_set(nb) for nb in neighbors))

    @classmethod
    def from_labels(cls, labels: Sequence[str], edges: Iterable[Tuple[str, str]]) -> 'UGraph':
        index = label_index(labels)
        try:
            pairs = [(index[u], index[v]) for u, v in edges]
        except KeyError as e:
            raise InvalidVertex(f"Unknown vertex label {e.args[0]!r}")
        return cls.from_edges(labels, pairs)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def vertices(self) -> VertexSet:
        return tuple(range(self.n))

    @property
    def edges(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.n) for v in self.adjacency[u] if u < v)

    def neighbors(self, v: int) -> VertexSet:
        check_vertices(self.n, (v,))
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        check_vertices(self.n, (u, v))
        return v in self.adjacency[u]

    def index(self, label: str) -> int:
        if label not in self._index:
            raise InvalidVertex(f"Unknown vertex label {label!r}")
        return self._index[label]

    def ids_of(self, labels: Iterable[str]) -> VertexSet:
        return vertex_set(self.index(label) for label in labels)

    def labels_of(self, vertices: Iterable[int]) -> Tuple[str, ...]:
        vs = vertex_set(vertices)
        check_vertices(self.n, vs)
        return tuple(self.labels[v] for v in vs)

    def edge_labels(self) -> Set[frozenset]:
        """Edges as frozensets of labels, handy for comparisons"""
        return {frozenset((self.labels[u], self.labels[v])) for u, v in self.edges}

    def with_edges(self, extra: Iterable[Tuple[int, int]]) -> 'UGraph':
        return UGraph.from_edges(self.labels, list(self.edges) + list(extra))


def reachable(h: UGraph, sources: Iterable[int], blocked: Iterable[int] = ()) -> Set[int]:
    """Vertices reachable from sources without entering blocked"""
    stop = set(blocked)
    seen = {s for s in sources if s not in stop}
    queue = deque(sorted(seen))
    while queue:
        v = queue.popleft()
        for w in h.adjacency[v]:
            if w not in seen and w not in stop:
                seen.add(w)
                queue.append(w)
    return seen


def connected_component(h: UGraph, removed: Iterable[int], seed: int) -> VertexSet:
    """cc(removed, seed, h): component of seed once removed is deleted"""
    removed = vertex_set(removed)
    check_vertices(h.n, removed)
    check_vertices(h.n, (seed,))
    if seed in removed:
        raise OverlapError(f"Seed {h.labels[seed]} lies in the removed set")
    return vertex_set(reachable(h, (seed,), removed))


def boundary(h: UGraph, comp: Iterable[int]) -> VertexSet:
    """Vertices outside comp with a neighbour inside it"""
    comp = vertex_set(comp)
    check_vertices(h.n, comp)
    inside = set(comp)
    out = set()
    for v in comp:
        out.update(w for w in h.adjacency[v] if w not in inside)
    return vertex_set(out)
