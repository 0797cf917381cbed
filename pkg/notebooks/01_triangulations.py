"""
Closed triangulations and their combinatorics
=============================================

Load the bundled fixtures, validate them, and look at edge classes, vertex
links and the gluing matrix. Then subdivide and check that nothing breaks.
"""

# %%
import numpy as np

from hypgluing.fixtures import NAMES, load_fixture
from hypgluing.triangulation import barycentric_subdivide, gluing_matrix, validate

# %%
# Each fixture is a single-vertex triangulation of a closed 3-manifold.
for name in NAMES:
    T = load_fixture(name)
    rep = validate(T)
    print(f"{name:>13}: tets={rep.tet_count} edges={rep.edge_count} vertices={rep.vertex_count} "
          f"links={rep.links} ok={rep.ok}")

# %%
# The L(4,1) triangulation has one tetrahedron and two edges, of valence 2 and 4.
T = load_fixture("lens_4_1")
for e in T.edges:
    print(e.index, "valence", e.valence, "corners", e.corners)

# %%
# Rows of the gluing matrix are edges, columns are the three quads of each
# tetrahedron. Every quad faces two edge slots, so columns sum to 2.
M = gluing_matrix(T)
print(M)
print("column sums", M.sum(axis=0), "row sums", M.sum(axis=1))

# %%
# Barycentric subdivision: 24 tetrahedra per original one, E = V + T still holds.
B = barycentric_subdivide(T)
rep = validate(B)
print(rep.tet_count, rep.edge_count, rep.vertex_count, rep.edge_count == rep.vertex_count + rep.tet_count)
print("all links spheres:", rep.links_are_spheres)
print("column sums all 2:", bool(np.all(gluing_matrix(B).sum(axis=0) == 2)))
