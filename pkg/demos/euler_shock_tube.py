"""
Euler shock tubes: accuracy, robustness and crash reports
=========================================================

Solves the modified Sod problem with characteristic WENO of increasing order
and the exact Riemann solver flux, compares with the exact profile and with
the second-order MUSCL reference, then shows how a crash is reported.
"""

from wenodec.analysis import run_errors
from wenodec.problems import get_problem
from wenodec.solver import SchemeConfig, reference_muscl_run, run_simulation

problem = get_problem("euler-rp1")
for order in (3, 5, 7, 9):
    scheme = SchemeConfig(order=order, variables="char", flux="exact", equation=problem.equation)
    out = run_simulation(problem, scheme, 100)
    L1 = run_errors(problem, out, order)[0][0]
    print(f"{scheme.label():>22}: {out.steps} steps, L1(rho) = {L1:.4e}")

ref = reference_muscl_run(problem, 100)
print(f"{'MUSCL minmod':>22}: {ref.steps} steps, L1(rho) = {run_errors(problem, ref, 3)[0][0]:.4e}")

# very high order on the blast-wave problem fails without limiting; the run
# returns a crash outcome instead of raising
problem = get_problem("euler-rp3")
scheme = SchemeConfig(order=13, variables="char", flux="exact", equation=problem.equation)
out = run_simulation(problem, scheme, 100)
print("\nRP3 with WENO13:", out.status)
print(out.crash_report())
