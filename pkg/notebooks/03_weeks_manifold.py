"""
The Weeks manifold: maximal volume and holonomy
===============================================

A 9-tetrahedron census triangulation. The multi-start search finds many
solutions; volumes come in +-v pairs and the largest is about 0.9427.
The holonomy of the maximal solution satisfies every edge relator.
"""

# %%
import numpy as np

from hypgluing.equations import gluing_system
from hypgluing.fixtures import load_fixture
from hypgluing.holonomy import (
    abelian_invariants,
    characters,
    develop,
    generator_maps,
    presentation,
    verify_relators,
)
from hypgluing.solver import SolverOptions, max_volume, solve_all, tangent_volume_derivative

T = load_fixture("weeks")
S = gluing_system(T)
records = solve_all(S, SolverOptions(seed=0, restarts=512))
vols = np.array([r.volume for r in records])
print(len(records), "records, volume range", vols.min(), vols.max())

# %%
top = max_volume(records)
print("max volume", top.volume, "census", top.census, "corank", top.corank)

# %%
# No solution has all nine tetrahedra positively oriented.
print("all-positive records:", sum(np.all(r.z.imag > 0) for r in records))

# %%
# The solution set has positive dimension here; volume does not move along it.
print("derivatives along the kernel:", tangent_volume_derivative(S, top))

# %%
pres = presentation(T)
print("generators", len(pres.generators), "relators", len(pres.relators))
print("H_1 =", abelian_invariants(pres))

# %%
dev = develop(T, top.z, pres=pres)
gens = generator_maps(T, dev, pres)
print("max relator deviation from +-I:", verify_relators(pres, gens))
print("first traces:", np.round(characters(gens)[:4], 6))
