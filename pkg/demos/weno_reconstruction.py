"""
WENO reconstruction: tables, linear weights and nonlinear weights
=================================================================

Builds the exact coefficient tables for a few stencil radii, shows that the
linear weights recombine the small stencils into the big one, and watches the
nonlinear weights switch off a stencil that crosses a jump.
"""

import numpy as np

from wenodec.weno import build_weno_tables, nonlinear_weights, reconstruct_windows, smoothness_indicators

# linear weights are rational numbers; the tables keep them exactly
for r in (2, 3, 4):
    tab = build_weno_tables(r)
    print(f"order {tab.order}: d_right =", [str(v) for v in tab.exact["d"]["right"]])

# with linear weights WENO reproduces the big-stencil reconstruction
tab = build_weno_tables(3)
x = np.linspace(-2.0, 2.0, 5)
window = np.sin(x)
lin_left, lin_right = reconstruct_windows(window, tab, linear=True)
print("linear WENO5 right value:", float(lin_right), " big stencil:", float(window @ tab.c_ho["right"]))

# smooth data on a fine mesh: omega stays close to d
fine = np.sin(0.3 + 0.01 * np.arange(-2, 3))
beta = smoothness_indicators(fine, tab)
print("smooth omega:", np.round(nonlinear_weights(beta, tab.d["right"]), 4), " d:", tab.d["right"])

# a jump inside the window: stencils touching it get almost no weight
jump = np.array([1.0, 1.0, 1.0, 0.0, 0.0])
beta = smoothness_indicators(jump, tab)
omega = nonlinear_weights(beta, tab.d["right"])
print("beta at a jump:", beta)
print("omega at a jump:", np.round(omega, 6))
left, right = reconstruct_windows(jump, tab)
print(f"face values near the jump: left {float(left):.6f}, right {float(right):.6f}")
