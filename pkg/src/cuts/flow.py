"""
Flow module for Adjust
Vertex-disjoint paths and minimum vertex cuts through unit-capacity max-flow
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import List, Optional, Tuple

from src.errors import NoFiniteCut, OverlapError
from src.graphs.dag import check_vertices
from src.graphs.ugraph import UGraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PathBundle:
    """Inner-vertex-disjoint A-Y paths, each listed from A to Y"""
    paths: Tuple[Tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.paths)

    def interiors(self) -> List[Tuple[int, ...]]:
        return [path[1:-1] for path in self.paths]


class FlowNetwork:
    """
    Split-vertex residual network for A-Y vertex cuts

    Every vertex v other than the terminals becomes v_in = 2v and
    v_out = 2v + 1 joined by a capacity-1 arc; an undirected edge u-w becomes
    the arcs u_out -> w_in and w_out -> u_in. The source is a_out and the
    sink y_in. Arcs are stored in pairs (i, i ^ 1) of forward and residual
    arcs.
    """

    def __init__(self, h: UGraph, a: int, y: int):
        check_vertices(h.n, (a, y))
        if a == y:
            raise OverlapError("Cut terminals must differ")
        if h.has_edge(a, y):
            raise NoFiniteCut(f"{h.labels[a]} and {h.labels[y]} are adjacent")

        self.h = h
        self.a = a
        self.y = y
        self.source = 2 * a + 1
        self.sink = 2 * y
        self.flow = 0
        self._complete = False

        self._head: List[int] = []
        self._cap: List[int] = []
        self._out: List[List[int]] = [[] for _ in range(2 * h.n)]

        for v in range(h.n):
            if v != a and v != y:
                self._add_arc(2 * v, 2 * v + 1)
        for u in range(h.n):
            if u == y:
                continue
            for w in h.adjacency[u]:
                if w != a:
                    self._add_arc(2 * u + 1, 2 * w)

    def _add_arc(self, tail: int, head: int):
        self._out[tail].append(len(self._head))
        self._head.append(head)
        self._cap.append(1)
        self._out[head].append(len(self._head))
        self._head.append(tail)
        self._cap.append(0)

    def _augmenting_path(self) -> Optional[List[int]]:
        parent_arc = [-1] * len(self._out)
        parent_arc[self.source] = -2
        queue = deque([self.source])
        while queue:
            node = queue.popleft()
            for arc in self._out[node]:
                nxt = self._head[arc]
                if self._cap[arc] > 0 and parent_arc[nxt] == -1:
                    parent_arc[nxt] = arc
                    if nxt == self.sink:
                        return parent_arc
                    queue.append(nxt)
        return None

    def max_flow(self) -> int:
        """Augment along shortest residual paths until none is left"""
        if self._complete:
            return self.flow
        while True:
            parent_arc = self._augmenting_path()
            if parent_arc is None:
                break
            node = self.sink
            while node != self.source:
                arc = parent_arc[node]
                self._cap[arc] -= 1
                self._cap[arc ^ 1] += 1
                node = self._head[arc ^ 1]
            self.flow += 1
        self._complete = True
        logger.debug(f"🔍 Max flow {self.h.labels[self.a]} -> {self.h.labels[self.y]}: {self.flow}")
        return self.flow

    def _carries_flow(self, arc: int) -> bool:
        return arc % 2 == 0 and self._cap[arc] == 0

    def paths(self) -> PathBundle:
        """Decompose the maximum flow into paths, ordered by their first vertex"""
        self.max_flow()
        paths = []
        for arc in self._out[self.source]:
            if not self._carries_flow(arc):
                continue
            path = [self.a]
            node = self._head[arc]
            while node != self.sink:
                v = node // 2
                path.append(v)
                node = next(self._head[nxt] for nxt in self._out[2 * v + 1] if self._carries_flow(nxt))
            path.append(self.y)
            paths.append(tuple(path))
        return PathBundle(tuple(paths))

    def augmentable_through(self, v: int) -> bool:
        """
        Whether adding the edges a-v and v-y would raise the cut size

        Those two edges add a single a-v-y route, so the maximum flow grows
        by at most one; one residual search with the two extra arcs decides it.
        The network itself is left untouched.
        """
        check_vertices(self.h.n, (v,))
        if v == self.a or v == self.y:
            raise OverlapError("The probed vertex must differ from both terminals")
        self.max_flow()

        v_in, v_out = 2 * v, 2 * v + 1
        visited = [False] * len(self._out)
        visited[self.source] = True
        visited[v_in] = True
        queue = deque([self.source, v_in])
        while queue:
            node = queue.popleft()
            if node == v_out:
                return True
            for arc in self._out[node]:
                nxt = self._head[arc]
                if self._cap[arc] > 0 and not visited[nxt]:
                    if nxt == self.sink:
                        return True
                    visited[nxt] = True
                    queue.append(nxt)
        return False


def disjoint_paths(h: UGraph, a: int, y: int) -> PathBundle:
    """A maximum set of inner-vertex-disjoint a-y paths in h"""
    return FlowNetwork(h, a, y).paths()


def min_cut_size(h: UGraph, a: int, y: int) -> int:
    """Size of a minimum a-y vertex cut (Menger)"""
    return FlowNetwork(h, a, y).max_flow()


def is_in_minimum(h: UGraph, a: int, y: int, v: int) -> bool:
    """Whether some minimum a-y cut of h contains v"""
    check_vertices(h.n, (a, y, v))
    if v == a or v == y:
        raise OverlapError("The probed vertex must differ from both terminals")
    base = min_cut_size(h, a, y)
    return min_cut_size(h.with_edges([(a, v), (v, y)]), a, y) == base
