"""
Error against CPU time
======================

Sweeps three orders over a few meshes and extrapolates the CPU time each
scheme would need to reach a target error. Timings depend on the machine.
"""

from wenodec.analysis import efficiency_sweep
from wenodec.problems import get_problem
from wenodec.solver import SchemeConfig

problem = get_problem("lae-test1")
schemes = [SchemeConfig(order=o) for o in (3, 5, 7)]
results = efficiency_sweep(problem, schemes, [40, 80, 160, 320], tolerance=1e-10)
for label, r in results.items():
    print(f"{label:>12}: L1 at N=320 {r['error'][-1]:.2e}, "
          f"expected time to 1e-10: {r['expected_time']:.3g} s")
