"""
Rates from the orbit of lambda
==============================

For a reflection group ``G`` and a parameter ``lambda`` the gauge is
``k(x) = max_A <lambda, A x>``.  The cone generated by the differences
``lambda - A lambda`` is simplicial; its extreme rays ``eta_i`` are the
normals of the fundamental cone and the coefficients of
``lambda = sum alpha_i eta_i`` give the rates ``2 alpha_i``.

Here the pipeline is run for the hyperoctahedral group B3 and its
even-sign subgroup D3 and compared with the closed forms.
"""

import numpy as np

from gaugediff import CoxeterGauge, closed_form_rates, exponential_coordinates
from gaugediff.exact import hmap_D

for family, lam in (("B", [1.0, 2.0, 3.0]), ("D", [1.0, 2.0, 3.0]), ("D", [-1.0, 2.0, 3.0])):
    coords = exponential_coordinates(CoxeterGauge.from_spec(family, lam))
    print(f"{family}3 lambda={lam}")
    print("  generators:", coords.basis.generators.tolist())
    for name, rate in zip(coords.variable_names, coords.rates):
        print(f"  {name:<16} rate {rate:g}")
    print("  closed form:", closed_form_rates(family, lam))

# For D the chamber representative keeps one minus sign when the number of
# negative coordinates is odd.
for x in ([-1.0, -2.0, 5.0], [-1.0, 2.0, 5.0], [-3.0, 1.0, 5.0]):
    print("H", x, "=", hmap_D(np.array(x)))
