"""
Gaussian moments and the maximum of the discriminant
====================================================

"""

import numpy as np

from coxeter_monodromy import macdonald_lhs_quadrature, macdonald_rhs, max_delta_closed_form, max_delta_optimize
from coxeter_monodromy.macdonald import sphere_norm

# Integrals of Delta^s exp(-q) by quadrature against the Gamma product
for name in ["A1", "A2", "B2", "G2"]:
    for s in (1, 2):
        lhs, rhs = macdonald_lhs_quadrature(name, s), macdonald_rhs(name, s)
        print(f"{name} s={s}: quadrature {lhs:.12g}  closed form {rhs:.12g}")

# The closed form also makes sense for fractional s
print("A2 at s = 1/2:", macdonald_rhs("A2", 0.5))

# Maximum of Delta on {q = 1}: projected gradient ascent vs closed form
for name in ["A2", "B2", "G2", "A3", "B3", "H3"]:
    res = max_delta_optimize(name, restarts=100, seed=0)
    print(f"{name}: optimizer {res.value:.10g}  closed form {float(max_delta_closed_form(name)):.10g}")

# L^s norms of Delta on the quadric climb toward the maximum
s_values = np.array([1, 4, 16, 64, 256])
print("B2 norms:", [round(sphere_norm("B2", s), 6) for s in s_values], "max", max_delta_closed_form("B2"))
