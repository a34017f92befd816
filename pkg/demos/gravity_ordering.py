"""
Ordering of particles under mutual attraction
=============================================

With the gauge ``k(x) = sum_{i<j} m_i m_j |x_i - x_j|`` particles attract
each other with strength proportional to their masses.  The law of the
ordering is explicit: an ordering ``pi`` has probability proportional to
``prod 1 / (F_i (1 - F_i))`` where ``F_i`` is the mass fraction of the ``i``
lowest particles.

A heavy particle among light ones prefers the middle.  Its rank follows a
Polya-urn law that tends to a Beta distribution as the system grows.  The
simulation below also settles which Beta parameter goes with a given mass.
"""

import numpy as np

from gaugediff import FunctionalSpec, MassGauge, SimConfig, make_rng, run
from gaugediff.permlaw import beta_limit_distance, perm_pmf, rank_pmf, urn_pmf
from gaugediff.stats import tv_distance

law = perm_pmf([2, 1, 1])
for pi, p in law.table.items():
    print("ordering", "".join(str(i + 1) for i in pi), "probability", p)
print("rank of the heavy particle:", [float(v) for v in law.rank_marginal(0)])
print("rank_pmf(3, 2):", [float(v) for v in rank_pmf(3, 2).pmf], " urn(3, 2):", [float(v) for v in urn_pmf(3, 2)])

# Simulate and compare with the two candidate parameters alpha and 2 alpha.
cfg = SimConfig(dt=1e-3, total_steps=250 * 20, burn_in_steps=250 * 8, thinning_stride=250, chains=1000, seed=3)
res = run(MassGauge([2.0, 1.0, 1.0]), cfg, FunctionalSpec("rank_of_particle", 0))
ranks = res.matrix[:, 0].astype(int)
emp = np.bincount(ranks - 1, minlength=3) / len(ranks)
print("simulated rank law:", emp.round(4))
for a in (2, 4):
    print(f"  TV to rank_pmf(3, {a}) = {tv_distance(emp, rank_pmf(3, a).as_array()):.4f}")

# The rank divided by n approaches Beta(alpha, alpha).
for n in (50, 100, 200):
    print(f"n={n}: Kolmogorov distance to Beta(2, 2) = {beta_limit_distance(n, 2, 2):.4f}")
