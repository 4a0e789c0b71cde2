"""Figure graphs shipped under graphs/ plus the Fig. 5 family built in code"""

from pathlib import Path
from typing import Iterable, Set, Tuple

from src.adjustment.query import Query, make_query
from src.graphs.dag import Dag
from src.utils.formats import parse_graph_text, parse_query_text

GRAPHS_DIR = Path(__file__).resolve().parent.parent / 'graphs'


def figure_path(name: str) -> Path:
    return GRAPHS_DIR / f'{name}.g'


def load_figure(name: str) -> Tuple[Dag, Query]:
    g = parse_graph_text(figure_path(name).read_text(encoding='utf-8'))
    spec = parse_query_text((GRAPHS_DIR / f'{name}.q').read_text(encoding='utf-8'))
    return g, Query.from_labels(g, spec.exposure, spec.outcome, spec.policy, spec.observed)


def fig5(k: int) -> Tuple[Dag, Query]:
    """W1..Wk -> T and Y, W(k+1) -> Y, T -> A -> Y; everything observed"""
    labels = [f'W{i}' for i in range(1, k + 2)] + ['T', 'A', 'Y']
    edges = [(f'W{i}', target) for i in range(1, k + 1) for target in ('T', 'Y')]
    edges += [(f'W{k + 1}', 'Y'), ('T', 'A'), ('A', 'Y')]
    g = Dag.from_labels(labels, edges)
    return g, make_query(g, g.index('A'), g.index('Y'))


def names(g, vertices: Iterable[int]) -> Set[str]:
    return set(g.labels_of(vertices))
