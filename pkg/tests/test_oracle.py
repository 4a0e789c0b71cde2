import numpy as np
import pytest

from src.adjustment import AdjustmentChecker, make_query
from src.errors import (
    InvalidAdjustmentSet,
    PositivityViolation,
    PreconditionViolation,
    StateSpaceTooLarge,
    TooLarge,
)
from src.graphs.dag import Dag
from src.oracle import (
    DiscreteBN,
    EnumerationMode,
    Policy,
    adjustment_value,
    enumerate_adjustment_sets,
    factor_product,
    gformula_value,
    influence_variance,
    joint_distribution,
    lemma1_identity,
    lemma2_identity,
    psi_decomposition,
    random_bn,
    random_instance,
    sample_joint,
)
from tests.figures import fig5

TOL = 1e-9
NONNEGATIVE = -1e-12


def treatment_outcome(a_row=(0.4, 0.6), y_rows=((0.2, 0.8), (0.7, 0.3)), values=(0.0, 1.0)):
    """A -> Y with binary states"""
    g = Dag.from_labels(['A', 'Y'], [('A', 'Y')])
    q = make_query(g, 0, 1)
    bn = DiscreteBN.build(g, (2, 2), [np.array(a_row), np.array(y_rows)], values)
    return bn, q


def labelled(g, sets):
    return [g.labels_of(z) for z in sets]


class TestDiscreteBN:
    def test_rejects_bad_shapes_and_rows(self):
        g = Dag.from_labels(['A', 'Y'], [('A', 'Y')])
        with pytest.raises(PreconditionViolation, match='shape'):
            DiscreteBN.build(g, (2, 2), [np.array([0.5, 0.5]), np.array([0.5, 0.5])])
        with pytest.raises(PreconditionViolation, match='sum to 1'):
            DiscreteBN.build(g, (2, 2), [np.array([0.5, 0.6]), np.full((2, 2), 0.5)])
        with pytest.raises(PreconditionViolation, match='negative'):
            DiscreteBN.build(g, (2, 2), [np.array([1.5, -0.5]), np.full((2, 2), 0.5)])
        with pytest.raises(PreconditionViolation, match='two states'):
            DiscreteBN.build(g, (1, 2), [np.array([1.0]), np.full((1, 2), 0.5)])

    def test_outcome_values(self):
        bn, q = treatment_outcome(values=None)
        assert list(bn.values_for(q.y)) == [0.0, 1.0]
        bn, q = treatment_outcome(values=(2.0, 5.0))
        assert list(bn.values_for(q.y)) == [2.0, 5.0]

    def test_joint_of_a_single_vertex_is_its_cpt(self):
        g = Dag.from_labels(['X'], [])
        bn = DiscreteBN.build(g, (3,), [np.array([0.2, 0.3, 0.5])])
        assert np.allclose(joint_distribution(bn), [0.2, 0.3, 0.5])

    def test_joint_of_a_chain(self):
        bn, _ = treatment_outcome()
        assert np.allclose(joint_distribution(bn), [[0.08, 0.32], [0.42, 0.18]])

    def test_joint_is_normalised(self, fig1):
        g, _ = fig1
        joint = joint_distribution(random_bn(g, seed=5, cardinality=3))
        assert joint.shape == (3,) * g.n
        assert joint.sum() == pytest.approx(1.0, abs=1e-12)

    def test_state_space_cap(self, fig1):
        g, _ = fig1
        with pytest.raises(StateSpaceTooLarge):
            joint_distribution(random_bn(g, seed=0), cap=10)

    def test_factor_product_aligns_axes(self):
        table = np.arange(6, dtype=float).reshape(3, 2)
        product = factor_product((2, 3), [((1, 0), table)])
        assert product.shape == (2, 3)
        assert product[1, 2] == table[2, 1]

    def test_sampling_matches_cpts(self):
        bn, _ = treatment_outcome()
        draws = sample_joint(bn, 20000, seed=11)
        assert draws.shape == (20000, 2)
        assert draws[:, 0].mean() == pytest.approx(0.6, abs=0.02)
        assert draws[draws[:, 0] == 0, 1].mean() == pytest.approx(0.8, abs=0.03)


class TestRandomModels:
    def test_random_bn_is_deterministic(self, fig1):
        g, _ = fig1
        first, second = random_bn(g, seed=3), random_bn(g, seed=3)
        assert all(np.array_equal(a, b) for a, b in zip(first.cpts, second.cpts))
        assert first.outcome_values == second.outcome_values

    def test_random_bn_rows(self, fig1):
        g, _ = fig1
        bn = random_bn(g, seed=4, cardinality=3, epsilon=0.05)
        for table in bn.cpts:
            assert np.allclose(table.sum(axis=-1), 1.0)
            assert table.min() >= 0.05 - 1e-12

    def test_random_bn_arguments(self, fig1):
        g, _ = fig1
        with pytest.raises(PreconditionViolation):
            random_bn(g, seed=0, cardinality=1)
        with pytest.raises(PreconditionViolation):
            random_bn(g, seed=0, cardinality=2, epsilon=0.6)

    def test_random_instance_is_admissible(self):
        g, q = random_instance(9)
        assert enumerate_adjustment_sets(g, q)


class TestPolicy:
    def test_static(self):
        bn, q = treatment_outcome()
        assert list(Policy.static(bn, q, 1).table) == [0.0, 1.0]
        with pytest.raises(PreconditionViolation):
            Policy.static(bn, q, 2)

    def test_random_policy_rows(self, fig1):
        g, q = fig1
        bn = random_bn(g, seed=0, cardinality=3)
        pi = Policy.random(bn, q, seed=2)
        assert pi.table.shape == (3, 3)
        assert np.allclose(pi.table.sum(axis=-1), 1.0)

    def test_table_shape_is_checked(self, fig1):
        g, q = fig1
        bn = random_bn(g, seed=0)
        with pytest.raises(PreconditionViolation):
            Policy.from_table(bn, q, [0.5, 0.5])

    def test_grid_needs_covariates(self, fig1):
        g, q = fig1
        bn = random_bn(g, seed=0)
        pi = Policy.static(bn, q, 0)
        grid = pi.on_grid(bn.cardinalities, g.ids_of(['L', 'F']))
        assert grid.shape == (2, 2, 2)
        with pytest.raises(PreconditionViolation):
            pi.on_grid(bn.cardinalities, g.ids_of(['F']))

    def test_policy_for_another_query(self, fig1):
        g, q = fig1
        bn = random_bn(g, seed=0)
        other = make_query(g, q.a, q.y)
        with pytest.raises(PreconditionViolation):
            gformula_value(bn, other, Policy.static(bn, q, 0))


class TestPolicyValues:
    @pytest.mark.parametrize('state,expected', [(1, 0.3), (0, 0.8)])
    def test_static_gformula(self, state, expected):
        bn, q = treatment_outcome()
        assert gformula_value(bn, q, Policy.static(bn, q, state)) == pytest.approx(expected, abs=1e-12)

    def test_observational_policy(self):
        bn, q = treatment_outcome()
        pi = Policy.from_table(bn, q, [0.4, 0.6])
        assert gformula_value(bn, q, pi) == pytest.approx(0.5, abs=1e-12)
        assert adjustment_value(bn, q, pi, ()) == pytest.approx(0.5, abs=1e-12)

    def test_positivity(self):
        bn, q = treatment_outcome(a_row=(1.0, 0.0))
        with pytest.raises(PositivityViolation) as info:
            gformula_value(bn, q, Policy.static(bn, q, 1))
        assert info.value.configuration == {'A': 1}
        assert gformula_value(bn, q, Policy.static(bn, q, 0)) == pytest.approx(0.8)

    @pytest.mark.parametrize('seed', range(10))
    def test_valid_sets_recover_the_policy_value(self, fig1, seed):
        g, q = fig1
        bn = random_bn(g, seed=seed)
        pi = Policy.random(bn, q, seed=seed)
        assert adjustment_value(bn, q, pi, g.ids_of(['L', 'F'])) == pytest.approx(gformula_value(bn, q, pi), abs=TOL)

    def test_invalid_set_is_biased_somewhere(self, fig1):
        g, q = fig1
        gaps = []
        for seed in range(20):
            bn = random_bn(g, seed=seed)
            pi = Policy.random(bn, q, seed=seed)
            gaps.append(abs(adjustment_value(bn, q, pi, g.ids_of(['L'])) - gformula_value(bn, q, pi)))
        assert max(gaps) > 1e-6

    @pytest.mark.parametrize('seed', range(15))
    def test_parents_of_exposure_and_covariates(self, seed):
        g, q = random_instance(seed, n_observed=5, n_hidden=2, max_policy=2)
        bn = random_bn(g, seed=seed)
        pi = Policy.random(bn, q, seed=seed)
        z = tuple(sorted(set(g.parents[q.a]) | set(q.l)))
        assert adjustment_value(bn, q, pi, z) == pytest.approx(gformula_value(bn, q, pi), abs=TOL)

    def test_candidate_must_hold_covariates(self, fig1):
        g, q = fig1
        bn = random_bn(g, seed=0)
        pi = Policy.static(bn, q, 0)
        with pytest.raises(PreconditionViolation):
            adjustment_value(bn, q, pi, g.ids_of(['F']))
        with pytest.raises(PreconditionViolation):
            adjustment_value(bn, q, pi, g.ids_of(['L', 'A']))


class TestInfluenceVariance:
    def test_observational_policy_without_adjustment(self):
        # ψ reduces to Y - E(Y|A), so σ² = E[var(Y|A)] = 0.4·0.16 + 0.6·0.21
        bn, q = treatment_outcome()
        report = influence_variance(bn, q, Policy.from_table(bn, q, [0.4, 0.6]), ())
        assert report.chi == pytest.approx(0.5)
        assert report.sigma2 == pytest.approx(0.19, abs=1e-12)
        assert report.psi_mean == pytest.approx(0.0, abs=1e-12)

    def test_static_policy_without_adjustment(self):
        bn, q = treatment_outcome()
        report = influence_variance(bn, q, Policy.static(bn, q, 1), ())
        assert report.sigma2 == pytest.approx(0.21 / 0.6, abs=1e-12)

    def test_constant_outcome_has_no_variance(self, fig1):
        g, q = fig1
        base = random_bn(g, seed=1)
        bn = DiscreteBN.build(g, base.cardinalities, base.cpts, (1.0, 1.0))
        report = influence_variance(bn, q, Policy.random(bn, q, seed=1), g.ids_of(['L', 'F']))
        assert report.chi == pytest.approx(1.0)
        assert report.sigma2 == pytest.approx(0.0, abs=1e-15)

    def test_invalid_set(self, fig1):
        g, q = fig1
        bn = random_bn(g, seed=0)
        with pytest.raises(InvalidAdjustmentSet, match='SeparationFails'):
            influence_variance(bn, q, Policy.static(bn, q, 0), g.ids_of(['L']))

    def test_components_add_up(self, fig1):
        g, q = fig1
        bn = random_bn(g, seed=2, cardinality=3)
        pi = Policy.random(bn, q, seed=2)
        lf = g.ids_of(['L', 'F'])
        weights, psi, components = psi_decomposition(bn, q, pi, lf)
        assert weights.sum() == pytest.approx(1.0)
        assert np.allclose(components.sum(axis=0), psi, atol=TOL)
        assert (weights * psi).sum() == pytest.approx(0.0, abs=TOL)

        report = influence_variance(bn, q, pi, lf)
        assert len(report.components) == 3
        assert sum(c.chi for c in report.components) == pytest.approx(report.chi, abs=TOL)
        assert sum(c.weight for c in report.components) == pytest.approx(1.0)

    def test_report_dict(self):
        bn, q = treatment_outcome()
        data = influence_variance(bn, q, Policy.static(bn, q, 0), ()).to_dict(bn.dag.labels)
        assert data['set'] == []
        assert [c['state'] for c in data['components']] == [0, 1]

    @pytest.mark.parametrize('seed', range(20))
    def test_precision_variable_helps(self, fig4, seed):
        g, q = fig4
        bn = random_bn(g, seed=seed)
        pi = Policy.random(bn, q, seed=seed)
        with_f = influence_variance(bn, q, pi, g.ids_of(['L', 'F'])).sigma2
        without = influence_variance(bn, q, pi, g.ids_of(['L'])).sigma2
        assert with_f <= without + TOL


class TestLemmas:
    @pytest.mark.parametrize('seed', range(10))
    def test_precision_gain_identity(self, fig4, seed):
        g, q = fig4
        bn = random_bn(g, seed=seed)
        pi = Policy.random(bn, q, seed=seed)
        lhs, rhs = lemma1_identity(bn, q, pi, g.ids_of(['L']), g.ids_of(['F']))
        assert lhs == pytest.approx(rhs, abs=TOL)
        assert lhs >= NONNEGATIVE and rhs >= NONNEGATIVE

    @pytest.mark.parametrize('seed', range(10))
    def test_overadjustment_cost_identity(self, seed):
        g, q = fig5(3)
        bn = random_bn(g, seed=seed)
        pi = Policy.random(bn, q, seed=seed)
        lhs, rhs = lemma2_identity(bn, q, pi, g.ids_of(['W1', 'W2', 'W3', 'W4']), g.ids_of(['T']))
        assert lhs == pytest.approx(rhs, abs=TOL)
        assert lhs >= NONNEGATIVE and rhs >= NONNEGATIVE

    def test_empty_extras_cost_nothing(self, fig1):
        g, q = fig1
        bn = random_bn(g, seed=0)
        pi = Policy.random(bn, q, seed=0)
        lf = g.ids_of(['L', 'F'])
        assert lemma1_identity(bn, q, pi, lf, ()) == pytest.approx((0.0, 0.0), abs=TOL)
        assert lemma2_identity(bn, q, pi, lf, ()) == pytest.approx((0.0, 0.0), abs=TOL)

    def test_preconditions(self, fig1, fig4):
        g, q = fig1
        bn = random_bn(g, seed=0)
        pi = Policy.static(bn, q, 0)
        with pytest.raises(PreconditionViolation, match='disjoint'):
            lemma1_identity(bn, q, pi, g.ids_of(['L', 'F']), g.ids_of(['F']))
        with pytest.raises(PreconditionViolation, match='valid'):
            lemma1_identity(bn, q, pi, g.ids_of(['L']), g.ids_of(['F']))
        with pytest.raises(PreconditionViolation, match='covariate'):
            lemma2_identity(bn, q, pi, g.ids_of(['F']), g.ids_of(['L']))

        g, q = fig4
        bn = random_bn(g, seed=0)
        pi = Policy.static(bn, q, 0)
        with pytest.raises(PreconditionViolation, match='d-separated'):
            lemma2_identity(bn, q, pi, g.ids_of(['L']), g.ids_of(['F']))


class TestEnumeration:
    def test_fig1(self, fig1):
        g, q = fig1
        assert labelled(g, enumerate_adjustment_sets(g, q)) == [('L', 'F')]

    def test_fig3(self, fig3):
        g, q = fig3
        assert labelled(g, enumerate_adjustment_sets(g, q)) == [(), ('Z1',), ('Z1', 'Z2')]
        assert enumerate_adjustment_sets(g, q, EnumerationMode.MINIMAL) == [()]

    def test_fig2_modes(self, fig2):
        g, q = fig2
        assert labelled(g, enumerate_adjustment_sets(g, q, EnumerationMode.MINIMUM)) == [('T',)]
        assert labelled(g, enumerate_adjustment_sets(g, q, EnumerationMode.MINIMAL)) == [('T',), ('W1', 'W2', 'W3')]

    def test_every_listed_set_is_valid(self, fig2):
        g, q = fig2
        checker = AdjustmentChecker(g, q)
        sets = enumerate_adjustment_sets(g, q, progress=True)
        assert len(sets) > 2
        assert all(checker.certificate(z).valid for z in sets)

    def test_no_admissible_set(self):
        g = Dag.from_labels(['U', 'A', 'Y'], [('U', 'A'), ('U', 'Y'), ('A', 'Y')], hidden=['U'])
        q = make_query(g, 1, 2)
        assert enumerate_adjustment_sets(g, q, EnumerationMode.MINIMUM) == []

    def test_cap(self, fig2):
        g, q = fig2
        with pytest.raises(TooLarge):
            enumerate_adjustment_sets(g, q, cap=2)
