"""
Random models module for Adjust
Seeded random DAGs, queries and discrete Bayesian networks for property tests
"""

import logging
from typing import List, Optional, Tuple

import numpy as np

from src.adjustment.criteria import exists_adjustment
from src.adjustment.query import Query, make_query
from src.config import Config
from src.errors import InclusionViolation, PreconditionViolation
from src.graphs.dag import Dag, ancestors, descendants
from src.oracle.discrete_bn import DiscreteBN

logger = logging.getLogger(__name__)


def random_dag(n_observed: int, n_hidden: int = 0, edge_probability: float = 0.4, seed: int = 0) -> Dag:
    """
    Random DAG over a shuffled topological order

    Observed vertices are labelled V0, V1, ...; hidden ones U0, U1, ...
    Every pair is joined forward with probability edge_probability.
    """
    rng = np.random.default_rng(seed)
    labels = [f"V{i}" for i in range(n_observed)] + [f"U{i}" for i in range(n_hidden)]
    order = [int(v) for v in rng.permutation(len(labels))]
    edges = [(order[i], order[j])
             for i in range(len(order)) for j in range(i + 1, len(order))
             if rng.random() < edge_probability]
    hidden = range(n_observed, n_observed + n_hidden)
    return Dag.from_edges(labels, edges, hidden)


def random_admissible_query(g: Dag, seed: int = 0, max_policy: int = 1) -> Optional[Query]:
    """A query with an adjustment set, or None when no exposure-outcome pair admits one"""
    rng = np.random.default_rng(seed)
    observed = list(g.observed)
    pairs = [(a, y) for y in observed for a in ancestors(g, (y,)) if a != y and a in set(observed)]
    for index in rng.permutation(len(pairs)):
        a, y = pairs[int(index)]
        after_a = set(descendants(g, (a,)))
        eligible = [v for v in observed if v not in after_a]
        size = int(rng.integers(0, min(max_policy, len(eligible)) + 1))
        policy = sorted(int(v) for v in rng.choice(eligible, size=size, replace=False)) if size else []
        try:
            q = make_query(g, a, y, policy)
        except InclusionViolation:
            continue
        if exists_adjustment(g, q):
            return q
    return None


def random_instance(seed: int, n_observed: int = 6, n_hidden: int = 2, edge_probability: float = 0.4,
                    max_policy: int = 1, attempts: int = 100) -> Tuple[Dag, Query]:
    """Draw DAGs from one seed stream until one has an admissible query"""
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        dag_seed, query_seed = (int(s) for s in rng.integers(0, 2 ** 31, size=2))
        g = random_dag(n_observed, n_hidden, edge_probability, dag_seed)
        q = random_admissible_query(g, query_seed, max_policy)
        if q is not None:
            return g, q
    raise PreconditionViolation(f"No admissible instance after {attempts} attempts (seed {seed})")


def random_bn(dag: Dag, seed: int, cardinality: Optional[int] = None,
              epsilon: Optional[float] = None) -> DiscreteBN:
    """
    Random categorical network with every CPT entry at least epsilon

    Rows are epsilon + (1 - k·epsilon)·Dirichlet(1, ..., 1); outcome values
    are uniform on [0, 1].
    """
    k = Config.RANDOM_CARDINALITY if cardinality is None else int(cardinality)
    epsilon = Config.RANDOM_EPSILON if epsilon is None else float(epsilon)
    if k < 2:
        raise PreconditionViolation(f"Cardinality must be at least 2, got {k}")
    if not 0 < epsilon < 1 / k:
        raise PreconditionViolation(f"Epsilon must lie in (0, 1/{k}), got {epsilon}")

    rng = np.random.default_rng(seed)
    cpts: List[np.ndarray] = []
    for v in range(dag.n):
        shape = (k,) * len(dag.parents[v])
        rows = rng.dirichlet(np.ones(k), size=int(np.prod(shape, dtype=int)))
        rows = epsilon + (1 - k * epsilon) * rows
        rows = rows / rows.sum(axis=-1, keepdims=True)
        cpts.append(rows.reshape(shape + (k,)))
    outcome_values = rng.uniform(0.0, 1.0, size=k)

    logger.debug(f"🔄 Random BN over {dag.n} vertices, k={k}, epsilon={epsilon}")
    return DiscreteBN.build(dag, (k,) * dag.n, cpts, outcome_values)
