"""
Deferred Correction versus SSP Runge-Kutta on a model ODE
=========================================================

Integrates u' = -u over [0, 1] and measures the order of each method. DeC of
order P uses ceil(P/2) Gauss-Lobatto subintervals and P correction sweeps.
"""

import math

import numpy as np

from wenodec.timestepping import SSPRK3, SSPRK54, build_dec_tableau, dec_step, rk_step


def error(step, n):
    u, dt = np.array([1.0]), 1.0 / n
    for k in range(n):
        u = step(lambda t, v: -v, u, k * dt, dt)
    return abs(u[0] - math.exp(-1.0))


for P in (2, 3, 5, 7):
    tab = build_dec_tableau(P)
    e = [error(lambda f, u, t, dt: dec_step(f, u, t, dt, tab), n) for n in (4, 8)]
    print(f"DeC{P}: M = {tab.M}, nodes = {np.round(tab.nodes, 4)}, observed order {math.log2(e[0] / e[1]):.2f}")

for tab in (SSPRK3, SSPRK54):
    e = [error(lambda f, u, t, dt: rk_step(f, u, t, dt, tab), n) for n in (10, 20)]
    print(f"{tab.name}: {len(tab.b)} stages, observed order {math.log2(e[0] / e[1]):.2f}")
