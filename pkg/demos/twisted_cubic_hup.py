"""Excess points of three cubics through the twisted cubic.

Three general cubics containing the twisted cubic C in P^3 meet in 27 points
counted with multiplicity.  The curve absorbs 17 of them; the other 10 are
isolated.  The hup homotopy starts from the monomialized ideal, whose
excess count is the mixed volume, and deforms it to C.
"""
from __future__ import annotations

from excesskit import IdealSpec, VariableSet, excess_by_mixed_volume, monomialize, run_hup

xyzw = VariableSet(("x", "y", "z", "w"))
cubic = IdealSpec.from_strings(["z^2 - y*w", "y*z - x*w", "y^2 - x*z"], xyzw)
d = (3, 3, 3)

mono = monomialize(cubic)
print("monomialized ideal:", mono.generator_strings())
print("mixed volume bound:", excess_by_mixed_volume(mono, d))

report = run_hup(cubic, d, seed=0)
print(f"tracked {report.tracked_count} paths, status {report.status}")
print(f"{report.on_variety_count} endpoints on the curve, {report.excess_count} excess points")
for s in report.solutions:
    coords = ", ".join(f"{c.real:+.4f}{c.imag:+.4f}i" for c in s.point)
    print(f"  [{coords}]  residual {s.residual:.1e}")
