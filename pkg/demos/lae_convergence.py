"""
Convergence on linear advection and the SSP order barrier
=========================================================

Runs short convergence studies on the sin^4 advection test. DeC keeps the
time error at the spatial order; SSPRK3 caps the observed order at three
unless the time step is shrunk as in the modified CFL condition.
"""

from wenodec.analysis import convergence_study
from wenodec.problems import get_problem
from wenodec.solver import SchemeConfig

problem = get_problem("lae-test1")
for scheme, ns in (
    (SchemeConfig(order=5), [80, 160, 320]),
    (SchemeConfig(order=7), [80, 160, 320]),
    (SchemeConfig(order=7, integrator="ssprk3"), [160, 320, 640]),
    (SchemeConfig(order=7, integrator="mssprk4"), [80, 160]),
):
    rep = convergence_study(problem, scheme, ns)
    cells = ", ".join(f"N={r.n_cells}: {r.L1[0]:.3e}" for r in rep.rows)
    print(f"{rep.label:>15}  {cells}  average order {rep.average_order():.2f}")
