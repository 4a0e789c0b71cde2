"""
Variance module for Adjust
Exact policy values and influence-function variances computed from the joint table
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from src.adjustment.criteria import AdjustmentChecker
from src.adjustment.query import Query, validate_query
from src.config import Config
from src.errors import InvalidAdjustmentSet, OverlapError, PositivityViolation, PreconditionViolation
from src.graphs.dag import VertexSet, check_vertices, vertex_set
from src.graphs.separation import d_separated
from src.oracle.discrete_bn import DiscreteBN, Policy, joint_distribution

logger = logging.getLogger(__name__)


def marginal(joint: np.ndarray, keep: Sequence[int]) -> np.ndarray:
    """Sum out every axis not in keep; result axes follow the order of keep"""
    keep = tuple(keep)
    summed = joint.sum(axis=tuple(v for v in range(joint.ndim) if v not in keep))
    order = sorted(keep)
    return np.transpose(summed, [order.index(v) for v in keep])


def safe_divide(num, den) -> np.ndarray:
    """num / den with 0 wherever den is 0"""
    num = np.asarray(num, dtype=float)
    den = np.asarray(den, dtype=float)
    out = np.zeros(np.broadcast(num, den).shape)
    return np.divide(num, den, out=out, where=den > 0)


def lift(table: np.ndarray, sub: Sequence[int], full: Sequence[int], cardinalities: Sequence[int]) -> np.ndarray:
    """Reshape a table over sub (plus trailing axes) so it broadcasts over the grid of full"""
    members = set(sub)
    shape = [cardinalities[v] if v in members else 1 for v in full] + list(table.shape[len(tuple(sub)):])
    return table.reshape(shape)


def fsum(array: np.ndarray) -> float:
    return math.fsum(np.asarray(array, dtype=float).ravel())


@dataclass(frozen=True)
class _Conditionals:
    """Observational quantities on the grid of a conditioning set z (z axes, then A, then Y)"""
    z: VertexSet
    p_zay: np.ndarray
    f_z: np.ndarray
    f_az: np.ndarray
    f_a_given_z: np.ndarray
    b: np.ndarray
    y2: np.ndarray
    pi: np.ndarray


def _check_positivity(bn: DiscreteBN, cond: VertexSet, a: int,
                      f_cond: np.ndarray, f_a_given_cond: np.ndarray, pi_grid: np.ndarray):
    bad = (f_cond[..., None] > 0) & (pi_grid > 0) & (f_a_given_cond <= 0)
    if np.any(bad):
        where = np.argwhere(bad)[0]
        labels = bn.dag.labels
        configuration = {labels[v]: int(where[i]) for i, v in enumerate(cond)}
        configuration[labels[a]] = int(where[-1])
        raise PositivityViolation(f"f({labels[a]} | {', '.join(labels[v] for v in cond) or '∅'}) is zero "
                                  f"where the policy needs it", configuration)


def _conditionals(bn: DiscreteBN, q: Query, pi: Policy, z: VertexSet, joint: np.ndarray) -> _Conditionals:
    yv = bn.values_for(q.y)
    p = marginal(joint, z + (q.a, q.y))
    f_az = p.sum(axis=-1)
    f_z = f_az.sum(axis=-1)
    f_a_given_z = safe_divide(f_az, f_z[..., None])
    pi_grid = pi.on_grid(bn.cardinalities, z)
    _check_positivity(bn, z, q.a, f_z, f_a_given_z, pi_grid)
    return _Conditionals(
        z=z,
        p_zay=p,
        f_z=f_z,
        f_az=f_az,
        f_a_given_z=f_a_given_z,
        b=safe_divide((p * yv).sum(axis=-1), f_az),
        y2=safe_divide((p * yv ** 2).sum(axis=-1), f_az),
        pi=pi_grid,
    )


def _candidate(bn: DiscreteBN, q: Query, pi: Policy, z: Iterable[int]) -> VertexSet:
    validate_query(bn.dag, q)
    pi.check_matches(q)
    z = vertex_set(z)
    check_vertices(bn.dag.n, z)
    if q.a in z or q.y in z:
        raise PreconditionViolation("Adjustment set must not contain the exposure or the outcome")
    if not set(q.l) <= set(z):
        raise PreconditionViolation("Adjustment set must contain every policy covariate")
    return z


def gformula_value(bn: DiscreteBN, q: Query, pi: Policy, joint: Optional[np.ndarray] = None,
                   cap: Optional[int] = None) -> float:
    """
    χ_π: expected outcome when A is drawn from π(a | l) instead of its own CPT

    Positivity is required of f(a | pa(A), L) wherever π puts mass.
    """
    validate_query(bn.dag, q)
    pi.check_matches(q)
    if joint is None:
        joint = joint_distribution(bn, cap)

    cond = vertex_set(set(bn.dag.parents_of(q.a)) | set(q.l))
    f_ca = marginal(joint, cond + (q.a,))
    f_c = f_ca.sum(axis=-1)
    _check_positivity(bn, cond, q.a, f_c, safe_divide(f_ca, f_c[..., None]), pi.on_grid(bn.cardinalities, cond))

    intervened = joint_distribution(bn, cap, replace={q.a: (q.l + (q.a,), pi.table)})
    value = fsum(marginal(intervened, (q.y,)) * bn.values_for(q.y))
    logger.debug(f"🔍 g-formula value {value:.12f}")
    return value


def adjustment_value(bn: DiscreteBN, q: Query, pi: Policy, z: Iterable[int],
                     joint: Optional[np.ndarray] = None) -> float:
    """χ_{π,Z} = E[ Σ_a π(a|L) E(Y | a, Z) ]"""
    z = _candidate(bn, q, pi, z)
    if joint is None:
        joint = joint_distribution(bn)
    c = _conditionals(bn, q, pi, z, joint)
    return fsum(c.f_z[..., None] * c.pi * c.b)


@dataclass(frozen=True)
class LevelComponent:
    """Contribution of one treatment state to ψ"""
    state: int
    weight: float
    chi: float
    sigma2: float


@dataclass(frozen=True)
class VarianceReport:
    z: VertexSet
    chi: float
    sigma2: float
    psi_mean: float
    components: Tuple[LevelComponent, ...] = ()

    def to_dict(self, labels: Sequence[str]) -> dict:
        return {
            'set': sorted(labels[v] for v in self.z),
            'chi': self.chi,
            'sigma2': self.sigma2,
            'psi_mean': self.psi_mean,
            'components': [
                {'state': c.state, 'weight': c.weight, 'chi': c.chi, 'sigma2': c.sigma2}
                for c in self.components
            ],
        }


def _require_valid(bn: DiscreteBN, q: Query, z: VertexSet, checker: Optional[AdjustmentChecker] = None):
    checker = checker or AdjustmentChecker(bn.dag, q)
    certificate = checker.certificate(z)
    if not certificate.valid:
        raise InvalidAdjustmentSet(
            f"{{{', '.join(bn.dag.labels_of(z))}}} is not an adjustment set: {certificate.violated_clause.value}")


def _psi(bn: DiscreteBN, q: Query, pi: Policy, z: VertexSet, joint: np.ndarray, chi: float):
    c = _conditionals(bn, q, pi, z, joint)
    yv = bn.values_for(q.y)

    ratio = safe_divide(c.pi, c.f_a_given_z)
    residual = yv - c.b[..., None]
    plug_in = (c.pi * c.b).sum(axis=-1)
    psi = ratio[..., None] * residual + plug_in[..., None, None] - chi

    parts = []
    for a in range(bn.cardinalities[q.a]):
        level = c.pi[..., a] * c.b[..., a]
        chi_a = fsum(c.f_z * level)
        part = np.zeros(psi.shape)
        part[..., a, :] = ratio[..., a, None] * residual[..., a, :]
        part += level[..., None, None] - chi_a
        parts.append((chi_a, fsum(c.f_z * c.pi[..., a]), part))
    return c, psi, parts


def psi_decomposition(bn: DiscreteBN, q: Query, pi: Policy, z: Iterable[int],
                      joint: Optional[np.ndarray] = None) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Influence function ψ of a valid set and its per-treatment-level parts

    Returns:
        (weights, psi, components): weights is P(z, a, y) on the (Z, A, Y)
        grid, psi has the same shape and components stacks one ψ_a per
        treatment state along a new leading axis.
    """
    z = _candidate(bn, q, pi, z)
    _require_valid(bn, q, z)
    if joint is None:
        joint = joint_distribution(bn)
    chi = gformula_value(bn, q, pi, joint=joint)
    c, psi, parts = _psi(bn, q, pi, z, joint, chi)
    return c.p_zay, psi, np.stack([part for _, _, part in parts])


def influence_variance(bn: DiscreteBN, q: Query, pi: Policy, z: Iterable[int],
                       joint: Optional[np.ndarray] = None,
                       checker: Optional[AdjustmentChecker] = None) -> VarianceReport:
    """
    σ²_{π,Z}: exact second moment of the influence function of a valid set

    Args:
        bn: the network (its Dag is the causal graph)
        q: the query
        pi: treatment policy over q.l
        z: candidate adjustment set, must pass is_adjustment_set
        joint: precomputed joint table of bn
        checker: precomputed AdjustmentChecker for (bn.dag, q)

    Returns:
        VarianceReport with χ_π, σ², E[ψ] and per-state components
    """
    z = _candidate(bn, q, pi, z)
    _require_valid(bn, q, z, checker)
    if joint is None:
        joint = joint_distribution(bn)

    chi = gformula_value(bn, q, pi, joint=joint)
    c, psi, parts = _psi(bn, q, pi, z, joint, chi)
    weights = c.p_zay

    psi_mean = fsum(weights * psi)
    if abs(psi_mean) > Config.MEAN_ZERO_TOLERANCE:
        logger.warning(f"⚠️ Influence function mean {psi_mean:.3e} exceeds tolerance for "
                       f"{{{', '.join(bn.dag.labels_of(z))}}}")

    components = tuple(
        LevelComponent(state=a, weight=weight, chi=chi_a, sigma2=fsum(weights * part ** 2))
        for a, (chi_a, weight, part) in enumerate(parts)
    )
    report = VarianceReport(z=z, chi=chi, sigma2=fsum(weights * psi ** 2), psi_mean=psi_mean,
                            components=components)
    logger.debug(f"📊 σ² = {report.sigma2:.12f} for {{{', '.join(bn.dag.labels_of(z))}}}")
    return report


def _disjoint(g_set: VertexSet, b_set: VertexSet):
    if set(g_set) & set(b_set):
        raise PreconditionViolation("The two sets must be disjoint")


def lemma1_identity(bn: DiscreteBN, q: Query, pi: Policy, b_set: Iterable[int],
                    g_set: Iterable[int], joint: Optional[np.ndarray] = None) -> Tuple[float, float]:
    """
    Gain from adding precision variables G to a valid set B

    lhs = σ²_B − σ²_{G∪B}; rhs = var(Σ_a S_a) with
    S_a = {I_a(A)/f(a|G,B) − 1}·π(a|L)·{b(a,G,B) − b(a,B)}.
    Requires A ⫫ G | B in the causal graph.
    """
    b_set, g_set = vertex_set(b_set), vertex_set(g_set)
    _disjoint(g_set, b_set)
    checker = AdjustmentChecker(bn.dag, q)
    if not checker.certificate(b_set).valid:
        raise PreconditionViolation("B must be a valid adjustment set")
    try:
        independent = d_separated(bn.dag, (q.a,), g_set, b_set)
    except OverlapError as e:
        raise PreconditionViolation(str(e)) from e
    if not independent:
        raise PreconditionViolation("A must be d-separated from G given B")

    if joint is None:
        joint = joint_distribution(bn)
    union = vertex_set(set(g_set) | set(b_set))
    lhs = (influence_variance(bn, q, pi, b_set, joint=joint, checker=checker).sigma2
           - influence_variance(bn, q, pi, union, joint=joint, checker=checker).sigma2)

    full = _conditionals(bn, q, pi, union, joint)
    base = _conditionals(bn, q, pi, b_set, joint)
    gap = full.pi * (full.b - lift(base.b, b_set, union, bn.cardinalities))
    s = safe_divide(gap, full.f_a_given_z) - gap.sum(axis=-1, keepdims=True)
    mean = fsum(full.f_az * s)
    rhs = fsum(full.f_az * s ** 2) - mean ** 2
    return lhs, rhs


def lemma2_identity(bn: DiscreteBN, q: Query, pi: Policy, g_set: Iterable[int],
                    b_set: Iterable[int], joint: Optional[np.ndarray] = None) -> Tuple[float, float]:
    """
    Cost of keeping overadjustment variables B next to a valid set G

    lhs = σ²_{G∪B} − σ²_G;
    rhs = Σ_a E[π²(a|L) f(a|G) var(Y|a,G) var{1/f(a|G,B) | a,G}].
    Requires L ⊆ G and Y ⫫ B | G ∪ {A} in the causal graph.
    """
    g_set, b_set = vertex_set(g_set), vertex_set(b_set)
    _disjoint(g_set, b_set)
    if not set(q.l) <= set(g_set):
        raise PreconditionViolation("G must contain every policy covariate")
    union = vertex_set(set(g_set) | set(b_set))
    checker = AdjustmentChecker(bn.dag, q)
    if not checker.certificate(union).valid or not checker.certificate(g_set).valid:
        raise PreconditionViolation("G and G ∪ B must both be valid adjustment sets")
    try:
        independent = d_separated(bn.dag, (q.y,), b_set, g_set + (q.a,))
    except OverlapError as e:
        raise PreconditionViolation(str(e)) from e
    if not independent:
        raise PreconditionViolation("Y must be d-separated from B given G and A")

    if joint is None:
        joint = joint_distribution(bn)
    lhs = (influence_variance(bn, q, pi, union, joint=joint, checker=checker).sigma2
           - influence_variance(bn, q, pi, g_set, joint=joint, checker=checker).sigma2)

    full = _conditionals(bn, q, pi, union, joint)
    small = _conditionals(bn, q, pi, g_set, joint)
    f_b_given_ag = safe_divide(full.f_az, lift(small.f_az, g_set, union, bn.cardinalities))
    inverse = safe_divide(1.0, full.f_a_given_z)
    b_axes = tuple(i for i, v in enumerate(union) if v in set(b_set))
    first = (f_b_given_ag * inverse).sum(axis=b_axes)
    second = (f_b_given_ag * inverse ** 2).sum(axis=b_axes)
    spread = second - first ** 2

    var_y = small.y2 - small.b ** 2
    rhs = fsum(small.f_z[..., None] * small.pi ** 2 * small.f_a_given_z * var_y * spread)
    return lhs, rhs
