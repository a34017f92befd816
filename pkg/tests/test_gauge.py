import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from gaugediff import groups
from gaugediff.gauge import (
    CoxeterGauge,
    GraphGauge,
    MassGauge,
    RankGauge,
    SplitGauge,
    argmax_element,
    centered_basis,
    drift,
    evaluate_k,
    rank_alphas,
    recurrence_constant,
    sphere_mesh,
    split_project,
)
from gaugediff.groups import GroupFamily

finite = st.floats(-50, 50, allow_nan=False, allow_infinity=False)


def _brute_k(lam, fam, x):
    return max(np.dot(lam, groups.apply(g, x)) for g in groups.enumerate_group(fam))


class TestEvaluateK:
    @pytest.mark.parametrize("t", [-2.5, 0.0, 3.0])
    def test_bang_bang(self, t):
        assert evaluate_k(CoxeterGauge.from_spec("B", [0.7]), [t]) == pytest.approx(0.7 * abs(t))

    def test_b2_example(self):
        assert evaluate_k(CoxeterGauge.from_spec("B", [1, 2]), [-3, 1]) == 7.0

    def test_graph_pair(self):
        assert evaluate_k(GraphGauge([[0, 1], [1, 0]]), [0, 5]) == 5.0

    @pytest.mark.parametrize("fam,lam", [("A", [-1, 0.5, 2]), ("B", [0.3, -1, 2]), ("D", [1, -2, 0.5, 3])])
    def test_matches_brute_force(self, fam, lam):
        model = CoxeterGauge.from_spec(fam, lam)
        x = np.random.default_rng(0).normal(size=(50, len(lam)))
        expected = [_brute_k(model.lam, model.family, xi) for xi in x]
        np.testing.assert_allclose(model.evaluate_k(x), expected, rtol=1e-12)

    @pytest.mark.parametrize("fam,n", [("A", 3), ("A", 4), ("B", 2), ("B", 3), ("D", 3), ("D", 4)])
    def test_group_invariance(self, fam, n):
        rng = np.random.default_rng(1)
        model = CoxeterGauge(rng.normal(size=n), GroupFamily(fam, n))
        x = rng.normal(size=(20, n))
        k = model.evaluate_k(x)
        for g in groups.enumerate_group(model.family):
            np.testing.assert_allclose(model.evaluate_k(groups.apply(g, x)), k, rtol=1e-12, atol=1e-12)

    @given(arrays(float, 3, elements=finite), st.sampled_from([0.5, 2.0, 10.0]))
    def test_homogeneity(self, x, c):
        for model in (CoxeterGauge.from_spec("B", [1, 2, 3]), RankGauge([2, 0, -2]), MassGauge([2, 1, 1])):
            np.testing.assert_allclose(evaluate_k(model, c * x), c * evaluate_k(model, x), rtol=1e-12, atol=1e-9)

    def test_rank_gauge_formula(self):
        # k = -sum delta_i x_(i)
        assert evaluate_k(RankGauge([1, 0, -1]), [5, 2, 9]) == pytest.approx(-(1 * 2 + 0 * 5 - 1 * 9))

    def test_mass_gauge_is_product_graph(self):
        m = np.array([2.0, 1.0, 3.0])
        beta = np.outer(m, m) - np.diag(m * m)
        x = np.random.default_rng(2).normal(size=(10, 3))
        np.testing.assert_allclose(MassGauge(m).evaluate_k(x), GraphGauge(beta).evaluate_k(x))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension"):
            CoxeterGauge.from_spec("B", [1, 2]).evaluate_k([1, 2, 3])


class TestDrift:
    @pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
    def test_bang_bang(self, alpha):
        model = CoxeterGauge.from_spec("B", [alpha])
        np.testing.assert_array_equal(drift(model, [2.0]), [-alpha])
        np.testing.assert_array_equal(drift(model, [-0.1]), [alpha])

    def test_graph_pair(self):
        np.testing.assert_array_equal(drift(GraphGauge([[0, 1], [1, 0]]), [0, 5]), [1, -1])

    def test_graph_coincident_particles(self):
        np.testing.assert_array_equal(drift(MassGauge([2, 1, 1]), np.zeros(3)), np.zeros(3))

    def test_rank_gauge(self):
        # ranks of (5,2,9) are (2,1,3): particle 2 is lowest and gets delta_1
        np.testing.assert_array_equal(drift(RankGauge([1, 0, -1]), [5, 2, 9]), [0, 1, -1])

    def test_b2_example(self):
        np.testing.assert_array_equal(drift(CoxeterGauge.from_spec("B", [1, 2]), [-3, 1]), [2, -1])

    @pytest.mark.parametrize("fam,n", [("A", 3), ("B", 3), ("D", 4)])
    def test_equivariance(self, fam, n):
        rng = np.random.default_rng(3)
        model = CoxeterGauge(rng.normal(size=n), GroupFamily(fam, n))
        x = rng.normal(size=(30, n))
        b = model.drift(x)
        for g in groups.enumerate_group(model.family):
            np.testing.assert_array_equal(model.drift(groups.apply(g, x)), groups.apply(g, b))

    @pytest.mark.parametrize(
        "model",
        [CoxeterGauge.from_spec("B", [1, 2, 3]), CoxeterGauge.from_spec("D", [-1, 2, 3]),
         RankGauge([2, 0, -2]), MassGauge([2, 1, 1])],
        ids=repr,
    )
    def test_euler_identity(self, model):
        # k is piecewise linear, so <x, -grad k> = -k(x) away from cone boundaries
        x = np.random.default_rng(4).normal(size=(200, model.n))
        np.testing.assert_allclose(np.sum(x * model.drift(x), axis=1) + model.evaluate_k(x), 0.0, atol=1e-12)

    @pytest.mark.parametrize("fam,lam", [("B", [1, 2, 3]), ("D", [-1, 2, 3])])
    def test_drift_is_minus_gradient(self, fam, lam):
        model = CoxeterGauge.from_spec(fam, lam)
        x = np.random.default_rng(5).normal(size=3)
        h = 1e-7
        grad = [(evaluate_k(model, x + h * e) - evaluate_k(model, x - h * e)) / (2 * h) for e in np.eye(3)]
        np.testing.assert_allclose(drift(model, x), -np.array(grad), atol=1e-6)


class TestArgmax:
    def test_identity_in_fundamental_cone(self):
        model = CoxeterGauge.from_spec("B", [1, 2, 3])
        assert argmax_element(model, [0.5, 1.0, 4.0]) == groups.identity(3)

    def test_b2_example(self):
        g = argmax_element(CoxeterGauge.from_spec("B", [1, 2]), [-3, 1])
        assert g.perm == (1, 0) and g.signs == (1, -1)
        np.testing.assert_array_equal(groups.apply(g, [-3, 1]), [1, 3])

    def test_a3_sorting(self):
        # lam decreasing, x increasing: the maximizer reverses x
        g = argmax_element(CoxeterGauge.from_spec("A", [1, 0, -1]), [0.1, 0.5, 2.0])
        assert g.perm == (2, 1, 0)

    def test_tie_break_is_lexicographic(self):
        model = CoxeterGauge.from_spec("B", [1, 2])
        g = argmax_element(model, [0.0, 0.0])
        assert g == min(groups.enumerate_group(model.family), key=lambda e: e.sort_key())

    def test_requires_coxeter(self):
        with pytest.raises(TypeError):
            argmax_element(RankGauge([1, 0, -1]), [1, 2, 3])

    @given(arrays(float, 3, elements=finite))
    @settings(max_examples=50)
    def test_value_attained(self, x):
        model = CoxeterGauge.from_spec("D", [-1, 2, 3])
        g = argmax_element(model, x)
        assert abs(model.lam @ groups.apply(g, x) - evaluate_k(model, x)) <= 1e-12 * max(1, np.abs(x).max())


class TestRankAlphas:
    @pytest.mark.parametrize(
        "delta,expected", [([2, 0, -2], [2, 2]), ([1, 1, 1], [0, 0]), ([3, 2, 1], [1, 1])]
    )
    def test_examples(self, delta, expected):
        np.testing.assert_allclose(rank_alphas(delta), expected)

    def test_k_on_H_is_sum_of_alpha_spacings(self):
        delta = np.array([3.0, 1.0, -0.5, -3.5])
        x = np.random.default_rng(6).normal(size=(20, 4))
        x -= x.mean(axis=1, keepdims=True)
        spacings = np.diff(np.sort(x, axis=1), axis=1)
        np.testing.assert_allclose(RankGauge(delta).evaluate_k(x), spacings @ rank_alphas(delta))


class TestRecurrence:
    def test_b2(self):
        assert recurrence_constant(CoxeterGauge.from_spec("B", [1, 2]), 8) == pytest.approx(2.0)

    def test_flat_rank_gauge(self):
        assert recurrence_constant(RankGauge([1, 1, 1])) == 0.0

    def test_bang_bang(self):
        assert recurrence_constant(CoxeterGauge.from_spec("B", [1.0])) == pytest.approx(1.0)

    def test_matches_alpha_positivity(self):
        rng = np.random.default_rng(8)
        for _ in range(10):
            delta = rng.normal(size=3)
            positive = bool(np.all(rank_alphas(delta) > 0))
            c = recurrence_constant(RankGauge(delta), 128)
            assert (c > 0) is positive

    def test_mass_gauge_positive(self):
        assert recurrence_constant(MassGauge([2, 1, 1])) > 0

    @pytest.mark.parametrize("dim", [1, 2, 3, 4])
    def test_mesh_is_on_sphere(self, dim):
        pts = sphere_mesh(dim, 6)
        np.testing.assert_allclose(np.linalg.norm(pts, axis=1), 1.0)
        np.testing.assert_array_equal(pts, sphere_mesh(dim, 6))


class TestSplit:
    def test_centering(self):
        np.testing.assert_allclose(split_project(RankGauge([1, 0, -1]), [1, 2, 3]), [-1, 0, 1])

    def test_kernel(self):
        np.testing.assert_allclose(split_project(MassGauge([1, 1, 1]), [4.0, 4.0, 4.0]), 0.0)

    def test_idempotent(self):
        model = RankGauge([1, 0, -1])
        x = np.random.default_rng(9).normal(size=(5, 3))
        p = split_project(model, x)
        np.testing.assert_allclose(split_project(model, p), p)

    def test_rejects_non_invariant(self):
        with pytest.raises(ValueError, match="not translation invariant"):
            split_project(CoxeterGauge.from_spec("B", [1, 2]), [1, 2])

    def test_split_gauge_is_irreducible(self):
        base = RankGauge([2, 0, -2])
        model = SplitGauge(base)
        assert recurrence_constant(model) > 0
        x = np.random.default_rng(10).normal(size=(10, 3))
        shift = x + 3.0
        # k' grows along the all-ones direction while k does not
        assert np.all(model.evaluate_k(shift) != model.evaluate_k(x))
        np.testing.assert_allclose(base.evaluate_k(shift), base.evaluate_k(x))

    def test_centered_basis(self):
        u = centered_basis(5)
        np.testing.assert_allclose(u.T @ u, np.eye(4), atol=1e-15)
        np.testing.assert_allclose(u.sum(axis=0), 0.0, atol=1e-15)


class TestValidation:
    def test_graph_must_be_connected(self):
        with pytest.raises(ValueError, match="connected"):
            GraphGauge([[0, 1, 0], [1, 0, 0], [0, 0, 0]])

    def test_graph_symmetric(self):
        with pytest.raises(ValueError, match="symmetric"):
            GraphGauge([[0, 1], [2, 0]])

    def test_masses_positive(self):
        with pytest.raises(ValueError):
            MassGauge([1, -1])

    def test_zero_lambda(self):
        with pytest.raises(ValueError):
            CoxeterGauge.from_spec("B", [0, 0])
