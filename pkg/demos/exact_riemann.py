"""
Exact Riemann solver for the Euler equations
============================================

Computes the star state of every benchmark Riemann problem by Newton
iteration, names the wave pattern, and samples the self-similar solution.
"""

import numpy as np

from wenodec.problems import RIEMANN_TESTS, euler_riemann_exact_profile
from wenodec.riemann import exact_riemann_star, sample_riemann

for key, data in RIEMANN_TESTS.items():
    s = exact_riemann_star(np.array(data.left), np.array(data.right))
    print(f"test {key:>8}: p* = {float(s.p_star):12.6g}  u* = {float(s.u_star):10.6g}  "
          f"waves {s.left_wave}/{s.right_wave}  ({s.iterations} Newton iterations)")

# sample the modified Sod problem along xi = x / t
data = RIEMANN_TESTS["1"]
xi = np.linspace(-2.0, 2.0, 9)
w = sample_riemann(np.array(data.left), np.array(data.right), xi)
print("\n   xi       rho         u         p")
for a, (rho, u, p) in zip(xi, w):
    print(f"{a:5.1f} {rho:9.5f} {u:9.5f} {p:9.5f}")

# the same data in physical space at the final time
x = np.linspace(0.0, 1.0, 6)
print("\nrho at t_final:", np.round(euler_riemann_exact_profile("1", x, data.t_final)[:, 0], 5))
