"""The weighted Minkowski sum of powers Newton polytopes is a sliced simplex.

For weights lam, sum lam_i N_i equals the part of the simplex
{u >= 0, sum u <= sum lam_i d_i} on the far side of sum_j u_j / p_j = sum lam_i.
"""
from __future__ import annotations

from excesskit.polytope import powers_newton_polytopes, slice_simplex

p, d, lam = (2, 3), (3, 4, 4), (1, 2, 1)
Ns = powers_newton_polytopes(p, d)
total = Ns[0].scale(lam[0])
for N, w in zip(Ns[1:], lam[1:]):
    total = total + N.scale(w)

cut = slice_simplex(p, d, lam)
far = cut.vertices_S1()
print("Minkowski sum vertices:", sorted(total.vertices))
print("far-side vertices:     ", [tuple(map(str, v)) for v in far])
print("sum inside far side:", all(all(h.contains(v) for h in cut.S1) for v in total.vertices))
print("far side inside sum:", all(total.contains(v) for v in far))
