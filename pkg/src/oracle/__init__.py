# Exact ground truth: discrete BNs, policy values, variances and brute-force enumeration
from src.oracle.discrete_bn import DiscreteBN, Policy, factor_product, joint_distribution, sample_joint
from src.oracle.enumeration import EnumerationMode, enumerate_adjustment_sets
from src.oracle.random_models import random_admissible_query, random_bn, random_dag, random_instance
from src.oracle.variance import (
    LevelComponent,
    VarianceReport,
    adjustment_value,
    gformula_value,
    influence_variance,
    lemma1_identity,
    lemma2_identity,
    marginal,
    psi_decomposition,
    safe_divide,
)
