import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaugediff.errors import EnumerationLimitError
from gaugediff.permlaw import (
    beta_limit_distance,
    conditional_spacing_rates,
    f_profile,
    mode_check,
    perm_pmf,
    rank_pmf,
    urn_pmf,
)

masses = st.lists(st.integers(1, 9), min_size=2, max_size=5)


class TestProfiles:
    def test_identity_ordering(self):
        assert f_profile((0, 1, 2), [2, 1, 1]) == [Fraction(1, 2), Fraction(3, 4)]

    def test_swapped_ordering(self):
        assert f_profile((1, 0, 2), [2, 1, 1]) == [Fraction(1, 4), Fraction(3, 4)]

    def test_conditional_rates(self):
        assert conditional_spacing_rates((1, 0, 2), [2, 1, 1]) == [3, 3]
        assert conditional_spacing_rates((0, 1, 2), [1, 1, 1]) == [2, 2]
        assert conditional_spacing_rates((0, 1), [1, 1]) == [1]

    def test_not_a_permutation(self):
        with pytest.raises(ValueError):
            f_profile((0, 0, 1), [1, 1, 1])


class TestPermPmf:
    def test_equal_masses_uniform(self):
        law = perm_pmf([1, 1, 1, 1])
        assert set(law.table.values()) == {Fraction(1, 24)}

    def test_two_particles(self):
        assert set(perm_pmf([3, 7]).table.values()) == {Fraction(1, 2)}

    def test_weights(self):
        law = perm_pmf([2, 1, 1])
        # unnormalized weights 1/(F(1-F)) products
        w_id = 1 / (Fraction(1, 2) * Fraction(1, 2)) / (Fraction(3, 4) * Fraction(1, 4))
        w_sw = 1 / (Fraction(1, 4) * Fraction(3, 4)) / (Fraction(3, 4) * Fraction(1, 4))
        assert w_id == Fraction(64, 3) and w_sw == Fraction(256, 9)
        assert law.probability((0, 1, 2)) / law.probability((1, 0, 2)) == w_id / w_sw

    def test_heavy_particle_in_middle(self):
        law = perm_pmf([2, 1, 1])
        assert [float(p) for p in law.rank_marginal(0)] == pytest.approx([0.3, 0.4, 0.3])
        assert law.modes() == [(1, 0, 2), (2, 0, 1)]

    @given(masses)
    @settings(max_examples=40)
    def test_sums_to_one_and_reversal(self, m):
        law = perm_pmf(m)
        assert sum(law.table.values()) == 1
        for pi, p in law.table.items():
            assert law.table[pi[::-1]] == p

    @given(masses, st.sampled_from([Fraction(1, 10), 7]))
    @settings(max_examples=30)
    def test_scale_invariance(self, m, c):
        a, b = perm_pmf(m), perm_pmf([c * v for v in m])
        assert a.table == b.table

    @given(masses, st.randoms(use_true_random=False))
    @settings(max_examples=30)
    def test_exchangeability(self, m, rnd):
        sigma = list(range(len(m)))
        rnd.shuffle(sigma)
        permuted = [m[sigma[i]] for i in range(len(m))]
        a, b = perm_pmf(m), perm_pmf(permuted)
        inv = {s: i for i, s in enumerate(sigma)}
        for pi, p in a.table.items():
            assert b.table[tuple(inv[q] for q in pi)] == p

    def test_float_path_matches_exact(self):
        exact = perm_pmf([3, 1, 2, 5])
        approx = perm_pmf([3.0, 1.0, 2.0, 5.0])
        for pi in exact.table:
            assert approx.table[pi] == pytest.approx(float(exact.table[pi]), rel=1e-12)

    def test_summary(self):
        s = perm_pmf([1, 1, 1]).summary()
        assert s["entropy"] == pytest.approx(math.log(6))
        assert s["tv_vs_uniform"] == 0

    def test_enumeration_guard(self):
        with pytest.raises(EnumerationLimitError):
            perm_pmf([1] * 10)

    def test_positive_masses(self):
        with pytest.raises(ValueError):
            perm_pmf([1, 0, 2])


class TestRankPmf:
    def test_heavy_particle(self):
        assert rank_pmf(3, 2).pmf == (Fraction(3, 10), Fraction(2, 5), Fraction(3, 10))

    @pytest.mark.parametrize("n", [1, 4, 7])
    def test_alpha_one_uniform(self, n):
        assert set(rank_pmf(n, 1).pmf) == {Fraction(1, n)}

    @pytest.mark.parametrize("n,alpha", [(5, Fraction(1, 3)), (6, 4), (9, math.pi)])
    def test_symmetry(self, n, alpha):
        p = rank_pmf(n, alpha).as_array()
        np.testing.assert_allclose(p, p[::-1], rtol=1e-12)
        assert p.sum() == pytest.approx(1.0)

    def test_matches_perm_pmf(self):
        # one particle of mass 2 among unit masses, seen through the ordering law
        law = perm_pmf([2, 1, 1, 1])
        np.testing.assert_allclose([float(v) for v in law.rank_marginal(0)], rank_pmf(4, 2).as_array())

    @pytest.mark.parametrize("n,alpha,expected", [(7, 3, (4,)), (3, 2, (2,)), (5, 0.5, (1, 5)), (6, 3, (3, 4))])
    def test_mode(self, n, alpha, expected):
        assert mode_check(n, alpha) == expected

    def test_mode_uniform_rejected(self):
        with pytest.raises(ValueError):
            mode_check(4, 1)


class TestUrn:
    @pytest.mark.parametrize("n", [1, 2, 5, 8])
    @pytest.mark.parametrize("a", [Fraction(1, 2), 1, 2, 3])
    def test_equals_rank_pmf(self, n, a):
        assert tuple(urn_pmf(n, a)) == rank_pmf(n, a).pmf

    def test_a_one_uniform(self):
        assert urn_pmf(5, 1) == [Fraction(1, 5)] * 5

    def test_irrational(self):
        np.testing.assert_allclose(urn_pmf(8, math.sqrt(2)), rank_pmf(8, math.sqrt(2)).as_array(), rtol=1e-12)


class TestBetaLimit:
    @pytest.mark.parametrize("n", [10, 100])
    def test_alpha_one_uniform(self, n):
        assert beta_limit_distance(n, 1, 1) == pytest.approx(1 / n)

    def test_decreasing_in_n(self):
        d = [beta_limit_distance(n, 2, 2) for n in (50, 100, 200)]
        assert d[0] > d[1] > d[2]
        assert d[2] < 0.05

    def test_wrong_parameter_does_not_converge(self):
        assert beta_limit_distance(200, 2, 4) > 0.05
