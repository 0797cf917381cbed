"""
Solving the gluing equations of L(4,1)
======================================

The one-tetrahedron triangulation of L(4,1) has a single solution, the flat
tetrahedron with shape -1. Its edge invariants are (-1, 1/2, 2).
"""

# %%
from hypgluing.equations import angle_report, gluing_system, residual
from hypgluing.fixtures import load_fixture
from hypgluing.shapes import shape_triple
from hypgluing.solver import SolverOptions, newton_refine, solve_all

S = gluing_system(load_fixture("lens_4_1"))
print("exponents (z, 1/(1-z), (z-1)/z) per edge:\n", S.matrix)

# %%
# z^2 = 1 on the first edge and (1/(1-z))^2 ((z-1)/z)^2 = 1 on the second.
print("residual at -1:", residual(S, [-1]))
print("residual at i: ", residual(S, [1j]))

# %%
records = solve_all(S, SolverOptions(seed=0, restarts=512))
print(len(records), "record(s)")
rec = records[0]
print("shape triple", shape_triple(rec.z[0]), "volume", rec.volume, "census", rec.census)

# %%
# Newton from a nearby start lands on the same point.
print(newton_refine(S, [-1 + 0.01j]).z)

# %%
# Angle sums around each edge are multiples of 2 pi.
print(angle_report(S, rec.z).to_dict())
