"""
DAG module for Adjust
Directed acyclic graphs with hidden-vertex flags and reachability queries
"""

import heapq
import logging
import numbers
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from src.errors import GraphError, InvalidVertex

logger = logging.getLogger(__name__)

VertexSet = Tuple[int, ...]


def vertex_set(vertices: Iterable[int]) -> VertexSet:
    """Sorted, deduplicated tuple of vertex ids"""
    return tuple(sorted(set(vertices)))


def check_vertices(n: int, vertices: Iterable[int]) -> None:
    """Raise InvalidVertex unless every id lies in 0..n-1"""
    for v in vertices:
        if isinstance(v, bool) or not isinstance(v, numbers.Integral) or not 0 <= v < n:
            raise InvalidVertex(f"Unknown vertex id {v!r} (graph has {n} vertices)")


def label_index(labels: Sequence[str]) -> Dict[str, int]:
    index: Dict[str, int] = {}
    duplicates = []
    for i, label in enumerate(labels):
        if label in index:
            duplicates.append(label)
        index[label] = i
    if duplicates:
        raise GraphError(f"Duplicate vertex labels: {', '.join(sorted(set(duplicates)))}")
    return index


@dataclass(frozen=True)
class Dag:
    """
    Directed acyclic graph over dense vertex ids 0..n-1

    Build through from_edges or from_labels; both enforce acyclicity,
    reject self-loops and duplicate labels, and collapse parallel edges.
    """

    labels: Tuple[str, ...]
    parents: Tuple[VertexSet, ...]
    children: Tuple[VertexSet, ...]
    hidden: VertexSet = ()
    _index: Dict[str, int] = field(init=False, repr=False, compare=False)
    _hidden: FrozenSet[int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, '_index', label_index(self.labels))
        object.__setattr__(self, '_hidden', frozenset(self.hidden))

    @classmethod
    def from_edges(cls, labels: Sequence[str], edges: Iterable[Tuple[int, int]],
                   hidden: Iterable[int] = ()) -> 'Dag':
        labels = tuple(labels)
        n = len(labels)
        label_index(labels)

        parents: List[set] = [set() for _ in range(n)]
        children: List[set] = [set() for _ in range(n)]
        for u, v in edges:
            check_vertices(n, (u, v))
            if u == v:
                raise GraphError(f"Self-loop on {labels[u]} (a self-loop is a cycle)")
            parents[v].add(u)
            children[u].add(v)

        hidden_set = vertex_set(hidden)
        check_vertices(n, hidden_set)

        dag = cls(labels,
                  tuple(vertex_set(p) for p in parents),
                  tuple(vertex_set(c) for c in children),
                  hidden_set)
        dag.topological_order()
        logger.debug(f"Built DAG with {n} vertices, {sum(len(c) for c in children)} edges, {len(hidden_set)} hidden")
        return dag

    @classmethod
    def from_labels(cls, labels: Sequence[str], edges: Iterable[Tuple[str, str]],
                    hidden: Iterable[str] = ()) -> 'Dag':
        """Build from labelled edges; ids follow the order of labels"""
        index = label_index(labels)

        def lookup(label: str) -> int:
            if label not in index:
                raise InvalidVertex(f"Unknown vertex label {label!r}")
            return index[label]

        return cls.from_edges(labels,
                              [(lookup(u), lookup(v)) for u, v in edges],
                              [lookup(h) for h in hidden])

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def vertices(self) -> VertexSet:
        return tuple(range(self.n))

    @property
    def edges(self) -> Tuple[Tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.n) for v in self.children[u])

    @property
    def observed(self) -> VertexSet:
        return tuple(v for v in range(self.n) if v not in self._hidden)

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

    def is_hidden(self, v: int) -> bool:
        return v in self._hidden

    def parents_of(self, v: int) -> VertexSet:
        check_vertices(self.n, (v,))
        return self.parents[v]

    def children_of(self, v: int) -> VertexSet:
        check_vertices(self.n, (v,))
        return self.children[v]

    def topological_order(self) -> VertexSet:
        """Kahn's algorithm, smallest available id first"""
        indegree = [len(p) for p in self.parents]
        ready = [v for v in range(self.n) if indegree[v] == 0]
        heapq.heapify(ready)
        order = []
        while ready:
            v = heapq.heappop(ready)
            order.append(v)
            for c in self.children[v]:
                indegree[c] -= 1
                if indegree[c] == 0:
                    heapq.heappush(ready, c)

        if len(order) != self.n:
            stuck = [self.labels[v] for v in range(self.n) if indegree[v] > 0]
            raise GraphError(f"Graph has a directed cycle through {', '.join(stuck)}")
        return tuple(order)

    def without_edges(self, removed: Iterable[Tuple[int, int]]) -> 'Dag':
        drop = set(removed)
        return Dag.from_edges(self.labels, [e for e in self.edges if e not in drop], self.hidden)


def _reach(adjacency: Sequence[Sequence[int]], start: Iterable[int]) -> VertexSet:
    seen = set(start)
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return vertex_set(seen)


def ancestors(g: Dag, s: Iterable[int]) -> VertexSet:
    """an_G(s), reflexive: every vertex is its own ancestor"""
    s = vertex_set(s)
    check_vertices(g.n, s)
    return _reach(g.parents, s)


def descendants(g: Dag, s: Iterable[int]) -> VertexSet:
    """de_G(s), reflexive"""
    s = vertex_set(s)
    check_vertices(g.n, s)
    return _reach(g.children, s)
