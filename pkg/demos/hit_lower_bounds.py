"""Lower bounds from repeated hit homotopies.

Each iteration tracks the 7 solutions of the monomial system (z^2, yz, y^2)
to the twisted cubic system with a fresh gamma.  New excess points are kept,
so the count can only grow.  There is no guarantee it reaches 10.
"""
from __future__ import annotations

from excesskit import IdealSpec, VariableSet, run_hit_iterations

xyzw = VariableSet(("x", "y", "z", "w"))
cubic = IdealSpec.from_strings(["z^2 - y*w", "y*z - x*w", "y^2 - x*z"], xyzw)

for seed in range(4):
    report = run_hit_iterations(cubic, ["z^2", "y*z", "y^2"], (3, 3, 3), seed=seed, max_iters=8)
    print(f"seed {seed}: lower bounds {report.lower_bound_history}")
