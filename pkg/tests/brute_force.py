"""Slow, literal reference implementations used to cross-check the library"""

import random
from itertools import combinations
from typing import Iterator, List, Sequence, Set, Tuple

from src.graphs.dag import Dag, ancestors
from src.graphs.ugraph import UGraph


def simple_paths(adjacency: Sequence[Sequence[int]], start: int, end: int) -> Iterator[List[int]]:
    stack = [(start, [start])]
    while stack:
        node, path = stack.pop()
        for nxt in adjacency[node]:
            if nxt == end:
                yield path + [nxt]
            elif nxt not in path:
                stack.append((nxt, path + [nxt]))


def d_separated_by_paths(g: Dag, xs: Sequence[int], ws: Sequence[int], z: Sequence[int]) -> bool:
    """Every skeleton path between xs and ws is blocked by z"""
    skeleton = [sorted(set(g.parents[v]) | set(g.children[v])) for v in range(g.n)]
    opens_collider = set(ancestors(g, z))
    given = set(z)
    for x in xs:
        for w in ws:
            for path in simple_paths(skeleton, x, w):
                blocked = False
                for i in range(1, len(path) - 1):
                    prev, mid, nxt = path[i - 1], path[i], path[i + 1]
                    collider = prev in g.parents[mid] and nxt in g.parents[mid]
                    if (collider and mid not in opens_collider) or (not collider and mid in given):
                        blocked = True
                        break
                if not blocked:
                    return False
    return True


def subsets(items: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    for size in range(len(items) + 1):
        yield from combinations(items, size)


def separates(h: UGraph, a: int, y: int, z: Set[int]) -> bool:
    seen, stack = {a}, [a]
    while stack:
        v = stack.pop()
        for w in h.adjacency[v]:
            if w == y:
                return False
            if w not in seen and w not in z:
                seen.add(w)
                stack.append(w)
    return True


def all_cuts(h: UGraph, a: int, y: int) -> List[Tuple[int, ...]]:
    inner = [v for v in h.vertices if v not in (a, y)]
    return [z for z in subsets(inner) if separates(h, a, y, set(z))]


def minimal_cuts(h: UGraph, a: int, y: int) -> List[Tuple[int, ...]]:
    cuts = [set(z) for z in all_cuts(h, a, y)]
    return [tuple(sorted(z)) for z in cuts if not any(other < z for other in cuts)]


def minimum_cuts(h: UGraph, a: int, y: int) -> List[Tuple[int, ...]]:
    cuts = all_cuts(h, a, y)
    smallest = min(len(z) for z in cuts)
    return [z for z in cuts if len(z) == smallest]


def brute_min_cut_size(h: UGraph, a: int, y: int) -> int:
    return min(len(z) for z in all_cuts(h, a, y))


def contracted_edges(h0: UGraph, ignore: Set[int]) -> Set[frozenset]:
    """Survivor pairs joined by an H0 path whose interior lies entirely in ignore"""
    survivors = [v for v in h0.vertices if v not in ignore]
    restricted = [[w for w in h0.adjacency[v] if w in ignore] for v in h0.vertices]
    joined = set()
    for u, w in combinations(survivors, 2):
        if h0.has_edge(u, w):
            joined.add(frozenset((h0.labels[u], h0.labels[w])))
            continue
        for first in restricted[u]:
            if w in h0.adjacency[first] or _reaches(h0, first, w, ignore):
                joined.add(frozenset((h0.labels[u], h0.labels[w])))
                break
    return joined


def _reaches(h0: UGraph, start: int, target: int, ignore: Set[int]) -> bool:
    """Walk inside ignore from start to some neighbour of target"""
    seen, stack = {start}, [start]
    while stack:
        v = stack.pop()
        if target in h0.adjacency[v]:
            return True
        for w in h0.adjacency[v]:
            if w in ignore and w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def random_ugraph(rng: random.Random, n: int, p: float) -> UGraph:
    labels = [f'v{i}' for i in range(n)]
    edges = [(u, w) for u, w in combinations(range(n), 2) if rng.random() < p]
    return UGraph.from_edges(labels, edges)
