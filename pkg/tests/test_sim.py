import numpy as np
import pytest

from gaugediff import groups
from gaugediff.exact import exact_sample_rank
from gaugediff.gauge import CoxeterGauge, MassGauge, RankGauge
from gaugediff.sim import FunctionalSpec, SimConfig, SimulationError, choose_thinning, extract, run, step
from gaugediff.stats import exp_cdf, ks_one_sample, ks_statistic, ks_two_sample
from gaugediff.streams import make_rng


class TestStep:
    def test_graph_origin_fixed(self):
        np.testing.assert_array_equal(step(np.zeros(3), MassGauge([2, 1, 1]), 1e-3, np.zeros(3)), np.zeros(3))

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
    def test_bang_bang(self, alpha):
        x = step([2.0], CoxeterGauge.from_spec("B", [alpha]), 0.001, [0.0])
        assert x[0] == pytest.approx(2 - 0.001 * alpha, abs=1e-15)

    @pytest.mark.filterwarnings("ignore::RuntimeWarning")
    def test_non_finite(self):
        with pytest.raises(SimulationError, match="non-finite"):
            step([np.inf], CoxeterGauge.from_spec("B", [1.0]), 1e-3, [0.0])

    @pytest.mark.parametrize("fam,lam", [("B", (0.5, 1.0, 2.0)), ("D", (-1.0, 2.0, 3.0))])
    def test_pathwise_equivariance(self, fam, lam):
        model = CoxeterGauge.from_spec(fam, lam)
        rng = np.random.default_rng(0)
        x = rng.normal(size=3)
        inc = np.sqrt(1e-3) * rng.normal(size=(500, 3))
        for g in list(groups.enumerate_group(model.family))[::7]:
            a, b = x.copy(), groups.apply(g, x)
            for w in inc:
                a = step(a, model, 1e-3, w)
                b = step(b, model, 1e-3, groups.apply(g, w))
            np.testing.assert_array_equal(groups.apply(g, a), b)


class TestConfig:
    def test_default_burn_in(self):
        assert SimConfig(total_steps=1000).burn_in_steps == 50

    @pytest.mark.parametrize(
        "kw", [{"dt": 0.0}, {"total_steps": 100, "burn_in_steps": 100}, {"thinning_stride": 0}, {"workers": 0}]
    )
    def test_invalid(self, kw):
        with pytest.raises(ValueError):
            SimConfig(**kw)

    def test_kept(self):
        assert SimConfig(total_steps=1000, burn_in_steps=100, thinning_stride=10).kept_per_chain == 90

    def test_unknown_functional(self):
        with pytest.raises(ValueError, match="unknown functional"):
            FunctionalSpec("velocity")

    @pytest.mark.parametrize(
        "kind,n,cols",
        [("spacings", 3, ["spacing_1", "spacing_2"]), ("abs_order_stats", 1, ["abs_x"]),
         ("abs_order_stats", 2, ["abs_1", "abs_spacing_1"]), ("gauge_value", 4, ["k"]),
         ("dn_hmap_coords", 3, ["h1_plus_h2", "h_spacing_1", "h_spacing_2"])],
    )
    def test_columns(self, kind, n, cols):
        assert FunctionalSpec(kind).columns(n) == cols


class TestExtract:
    def test_rank_stable_ties(self):
        fn = FunctionalSpec("rank_of_particle", particle=1)
        assert extract(fn, RankGauge([1, 0, -1]), np.array([[0.0, 0.0, -1.0]]))[0, 0] == 3.0
        fn0 = FunctionalSpec("rank_of_particle", particle=0)
        assert extract(fn0, RankGauge([1, 0, -1]), np.array([[0.0, 0.0, -1.0]]))[0, 0] == 2.0

    def test_abs_order_stats(self):
        out = extract(FunctionalSpec("abs_order_stats"), None, np.array([[-3.0, 1.0, 2.0]]))
        np.testing.assert_array_equal(out, [[1.0, 1.0, 1.0]])

    def test_gauge_value_centers(self):
        model = RankGauge([2, 0, -2])
        x = np.array([[1.0, 2.0, 4.0]])
        np.testing.assert_allclose(extract(FunctionalSpec("gauge_value"), model, x + 10),
                                   extract(FunctionalSpec("gauge_value"), model, x))


class TestRun:
    def test_rejects_raw_state_of_invariant_model(self):
        cfg = SimConfig(total_steps=100, seed=1)
        with pytest.raises(ValueError, match="translation invariant"):
            run(MassGauge([2, 1, 1]), cfg, FunctionalSpec("abs_order_stats"))

    def test_particle_range(self):
        with pytest.raises(ValueError, match="out of range"):
            run(RankGauge([1, 0, -1]), SimConfig(total_steps=100, seed=1), FunctionalSpec("rank_of_particle", 5))

    def test_shape(self):
        cfg = SimConfig(total_steps=200, burn_in_steps=100, thinning_stride=10, seed=3, chains=4, workers=2)
        res = run(RankGauge([2, 0, -2]), cfg, FunctionalSpec("spacings"))
        assert res.samples.shape == (8, 10, 2)
        assert res.matrix.shape == (80, 2)
        assert res.columns == ["spacing_1", "spacing_2"]

    def test_deterministic(self):
        cfg = SimConfig(total_steps=500, seed=7, chains=3, workers=2)
        model = CoxeterGauge.from_spec("B", [1.0, 2.0])
        a = run(model, cfg, FunctionalSpec("abs_order_stats")).samples
        b = run(model, cfg, FunctionalSpec("abs_order_stats")).samples
        np.testing.assert_array_equal(a, b)
        c = run(model, SimConfig(total_steps=500, seed=8, chains=3, workers=2), FunctionalSpec("abs_order_stats"))
        assert not np.array_equal(a, c.samples)

    def test_parallel_equals_serial(self):
        model = MassGauge([2, 1, 1])
        cfg = SimConfig(total_steps=600, seed=11, chains=2, workers=3)
        serial = run(model, cfg, FunctionalSpec("centered_vector")).samples
        parallel = run(model, SimConfig(total_steps=600, seed=11, chains=2, workers=3, parallel=True),
                       FunctionalSpec("centered_vector")).samples
        np.testing.assert_array_equal(serial, parallel)

    def test_auto_thinning(self):
        cfg = SimConfig(total_steps=20_000, seed=5, chains=8, thinning_stride=None)
        model = CoxeterGauge.from_spec("B", [1.0])
        stride = choose_thinning(model, cfg, FunctionalSpec("abs_order_stats"))
        assert stride > 1
        res = run(model, cfg, FunctionalSpec("abs_order_stats"))
        assert res.config.thinning_stride == stride

    def test_initial_state_per_chain(self):
        x0 = np.arange(6.0).reshape(2, 3)
        cfg = SimConfig(total_steps=1, burn_in_steps=0, seed=1, chains=2, initial_state=x0.tolist(), dt=1e-12)
        res = run(RankGauge([2, 0, -2]), cfg, FunctionalSpec("centered_vector"))
        np.testing.assert_allclose(res.samples[:, 0], x0 - x0.mean(axis=1, keepdims=True), atol=1e-5)


class TestLaw:
    def test_stationarity_from_exact_start(self):
        delta = [2.0, 0.0, -2.0]
        model = RankGauge(delta)
        chains = 2000
        x0 = exact_sample_rank(delta, make_rng(31), chains)
        kw = dict(dt=1e-3, total_steps=3500, burn_in_steps=1000, thinning_stride=250, chains=chains)
        a = run(model, SimConfig(seed=32, initial_state=x0.tolist(), **kw), FunctionalSpec("spacings"))
        b = run(model, SimConfig(seed=33, **kw), FunctionalSpec("spacings"))
        ess_a, ess_b = a.ess(), b.ess()
        for j in range(2):
            rep = ks_two_sample(a.samples[:, :, j], b.samples[:, :, j], ess_a[j], ess_b[j])
            assert rep.verdict, rep.line()

    def test_discretization_sanity(self):
        # bang-bang, alpha = 1: the KS distance to Exp(2) barely moves when dt is halved
        model = CoxeterGauge.from_spec("B", [1.0])
        stats = []
        for k, dt in enumerate((1e-3, 5e-4)):
            unit = int(round(1 / dt))
            cfg = SimConfig(dt=dt, total_steps=10 * unit, burn_in_steps=5 * unit, thinning_stride=unit,
                            chains=2000, seed=40 + k)
            res = run(model, cfg, FunctionalSpec("abs_order_stats"))
            stats.append(ks_statistic(res.matrix[:, 0], lambda t: exp_cdf(t, 2.0)))
            assert ks_one_sample(res.matrix[:, 0], lambda t: exp_cdf(t, 2.0), res.ess()[0]).verdict
        band = 1.36 / np.sqrt(1e4)
        assert abs(stats[0] - stats[1]) < band
