"""
Triangulating the unit ball of a gauge
======================================

The unit ball ``{k <= 1}`` of a piecewise-linear gauge is a polytope made of
one simplex per group element.  Choosing a simplex with probability
proportional to its volume and a uniform point inside gives uniform samples
of the polytope, and ``k`` of such a point is Beta(d, 1).  Scaling the
direction by a Gamma(d, rate) radius gives the Gibbs law ``exp(-rate k)``.
"""

import numpy as np

from gaugediff import CoxeterGauge, GroupFamily, make_rng
from gaugediff.cones import build_decomposition, sample_gibbs_k, sample_uniform_polytope
from gaugediff.stats import beta_cdf, gamma_cdf, ks_one_sample

lam = [-1.0, 2.0, 3.0]
model = CoxeterGauge.from_spec("D", lam)
dec = build_decomposition(lam, GroupFamily("D", 3))
print(f"{len(dec.cones)} simplices, total volume {dec.total_volume:.6f}")

u = sample_uniform_polytope(dec, make_rng(0), 50_000)
print(ks_one_sample(model.evaluate_k(u), lambda t: beta_cdf(t, 3, 1), name="k(uniform) vs Beta(3, 1)").line())

g = sample_gibbs_k(dec, 2.0, make_rng(1), 50_000)
print(ks_one_sample(model.evaluate_k(g), lambda t: gamma_cdf(t, 3, 2.0), name="k(Gibbs) vs Gamma(3, 2)").line())

# The cone containing a point is the one whose transform maps it to the orthant.
x = np.array([[0.3, -1.2, 2.0]])
i = int(dec.locate(x)[0])
print("point", x[0], "lies in cone", dec.cones[i].label, "with coordinates", dec.coordinates(x)[0, i])
