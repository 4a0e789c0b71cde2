"""
Discrete BN module for Adjust
Fully specified discrete Bayesian networks, treatment policies and exact joint tables
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple

import numpy as np

from src.adjustment.query import Query
from src.config import Config
from src.errors import PreconditionViolation, StateSpaceTooLarge
from src.graphs.dag import Dag, VertexSet

logger = logging.getLogger(__name__)

ROW_TOLERANCE = 1e-12


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


def _check_rows(table: np.ndarray, what: str):
    if np.any(table < 0):
        raise PreconditionViolation(f"{what} has negative entries")
    sums = table.sum(axis=-1)
    if np.any(np.abs(sums - 1.0) > ROW_TOLERANCE):
        raise PreconditionViolation(f"{what} rows must sum to 1 (worst row sums to {sums.flat[np.argmax(np.abs(sums - 1.0))]!r})")


@dataclass(frozen=True, eq=False)
class DiscreteBN:
    """
    Categorical Bayesian network over a Dag

    cpts[v] has shape (*cardinalities of parents(v) in ascending id order,
    cardinality of v); outcome_values attaches a real value to each state of
    the outcome (state index when absent).
    """

    dag: Dag
    cardinalities: Tuple[int, ...]
    cpts: Tuple[np.ndarray, ...]
    outcome_values: Optional[Tuple[float, ...]] = None

    @classmethod
    def build(cls, dag: Dag, cardinalities: Sequence[int], cpts: Sequence[np.ndarray],
              outcome_values: Optional[Iterable[float]] = None) -> 'DiscreteBN':
        cardinalities = tuple(int(k) for k in cardinalities)
        if len(cardinalities) != dag.n or len(cpts) != dag.n:
            raise PreconditionViolation("Need one cardinality and one CPT per vertex")
        if any(k < 2 for k in cardinalities):
            raise PreconditionViolation("Every vertex needs at least two states")

        tables = []
        for v in range(dag.n):
            table = np.asarray(cpts[v], dtype=float)
            expected = tuple(cardinalities[p] for p in dag.parents[v]) + (cardinalities[v],)
            if table.shape != expected:
                raise PreconditionViolation(f"CPT of {dag.labels[v]} has shape {table.shape}, expected {expected}")
            _check_rows(table, f"CPT of {dag.labels[v]}")
            tables.append(_frozen(table))

        values = None if outcome_values is None else tuple(float(x) for x in outcome_values)
        return cls(dag, cardinalities, tuple(tables), values)

    @property
    def state_count(self) -> int:
        return math.prod(self.cardinalities)

    def values_for(self, y: int) -> np.ndarray:
        """Real values of the outcome's states"""
        if self.outcome_values is None:
            return np.arange(self.cardinalities[y], dtype=float)
        if len(self.outcome_values) != self.cardinalities[y]:
            raise PreconditionViolation(
                f"{len(self.outcome_values)} outcome values for {self.dag.labels[y]} "
                f"with {self.cardinalities[y]} states")
        return np.array(self.outcome_values, dtype=float)

    def factor(self, v: int) -> Tuple[VertexSet, np.ndarray]:
        return self.dag.parents[v] + (v,), self.cpts[v]


@dataclass(frozen=True, eq=False)
class Policy:
    """
    Treatment regime π(a | l)

    table has shape (*cardinalities of the covariates in ascending id order,
    cardinality of the treatment); each last-axis row sums to 1.
    """

    covariates: VertexSet
    treatment: int
    table: np.ndarray

    @classmethod
    def from_table(cls, bn: DiscreteBN, q: Query, table) -> 'Policy':
        table = np.asarray(table, dtype=float)
        expected = tuple(bn.cardinalities[v] for v in q.l) + (bn.cardinalities[q.a],)
        if table.shape != expected:
            raise PreconditionViolation(f"Policy table has shape {table.shape}, expected {expected}")
        _check_rows(table, "Policy")
        return cls(q.l, q.a, _frozen(table))

    @classmethod
    def static(cls, bn: DiscreteBN, q: Query, state: int) -> 'Policy':
        """Point mass on one treatment state, whatever the covariates"""
        k = bn.cardinalities[q.a]
        if not 0 <= state < k:
            raise PreconditionViolation(f"Treatment state {state} outside 0..{k - 1}")
        shape = tuple(bn.cardinalities[v] for v in q.l) + (k,)
        table = np.zeros(shape)
        table[..., state] = 1.0
        return cls.from_table(bn, q, table)

    @classmethod
    def random(cls, bn: DiscreteBN, q: Query, seed: int) -> 'Policy':
        """Stochastic covariate-dependent regime drawn from a flat Dirichlet"""
        rng = np.random.default_rng(seed)
        k = bn.cardinalities[q.a]
        shape = tuple(bn.cardinalities[v] for v in q.l)
        rows = rng.dirichlet(np.ones(k), size=math.prod(shape))
        rows = rows / rows.sum(axis=-1, keepdims=True)
        return cls.from_table(bn, q, rows.reshape(shape + (k,)))

    def check_matches(self, q: Query):
        if tuple(self.covariates) != tuple(q.l) or self.treatment != q.a:
            raise PreconditionViolation("Policy was built for a different treatment or covariate set")

    def on_grid(self, cardinalities: Sequence[int], z: Sequence[int]) -> np.ndarray:
        """π broadcast over the grid of z (ascending ids, must contain the covariates)"""
        z = tuple(z)
        if not set(self.covariates) <= set(z):
            raise PreconditionViolation("Adjustment set must contain every policy covariate")
        covariates = set(self.covariates)
        shape = [cardinalities[v] if v in covariates else 1 for v in z] + [self.table.shape[-1]]
        full = tuple(cardinalities[v] for v in z) + (self.table.shape[-1],)
        return np.broadcast_to(self.table.reshape(shape), full)


def check_state_space(bn: DiscreteBN, cap: Optional[int] = None):
    cap = Config.ORACLE_STATE_CAP if cap is None else cap
    if bn.state_count > cap:
        raise StateSpaceTooLarge(f"Joint table needs {bn.state_count} states, cap is {cap}")


def factor_product(cardinalities: Sequence[int],
                   factors: Iterable[Tuple[Sequence[int], np.ndarray]]) -> np.ndarray:
    """Multiply factors into a full table with one axis per vertex id"""
    cardinalities = tuple(cardinalities)
    joint = np.ones(cardinalities)
    for axes, table in factors:
        order = np.argsort(axes, kind='stable')
        aligned = np.transpose(table, order)
        shape = [1] * len(cardinalities)
        for axis in axes:
            shape[axis] = cardinalities[axis]
        joint = joint * aligned.reshape(shape)
    return joint


def joint_distribution(bn: DiscreteBN, cap: Optional[int] = None,
                       replace: Optional[Dict[int, Tuple[Sequence[int], np.ndarray]]] = None) -> np.ndarray:
    """
    Exact joint table by the product of all CPTs

    Args:
        bn: the network
        cap: maximum number of joint states (defaults to Config.ORACLE_STATE_CAP)
        replace: optional vertex -> (axes, table) factors used instead of CPTs

    Returns:
        ndarray with one axis per vertex id
    """
    check_state_space(bn, cap)
    replace = replace or {}
    factors = [replace.get(v, bn.factor(v)) for v in range(bn.dag.n)]
    joint = factor_product(bn.cardinalities, factors)
    logger.debug(f"🔍 Joint table over {bn.state_count} states, total mass {joint.sum():.12f}")
    return joint


def sample_joint(bn: DiscreteBN, size: int, seed: int) -> np.ndarray:
    """Ancestral sampling; rows are draws, columns are vertex ids"""
    rng = np.random.default_rng(seed)
    draws = np.zeros((size, bn.dag.n), dtype=int)
    for v in bn.dag.topological_order():
        parents = bn.dag.parents[v]
        rows = bn.cpts[v][tuple(draws[:, p] for p in parents)] if parents else np.broadcast_to(bn.cpts[v], (size, bn.cardinalities[v]))
        thresholds = np.cumsum(rows, axis=-1)
        u = rng.random(size)
        states = (u[:, None] >= thresholds).sum(axis=-1)
        draws[:, v] = np.minimum(states, bn.cardinalities[v] - 1)
    return draws
