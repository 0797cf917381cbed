"""
Straight simplices in the Klein model
=====================================

Straighten a mixed simplex with two ideal vertices, move it by a Lorentz
transformation, and check that straightening commutes with the motion.
"""

# %%
import numpy as np

from hypgluing.hypgeom import apply_isometry, boost, dihedral_angles, straighten

rng = np.random.default_rng(1)
verts = [
    np.array([1.0, 0, 0]),
    np.array([0.2, 0.3, -0.1]),
    np.array([0, 0, -1.0]),
    np.array([-0.4, 0.1, 0.5]),
]
s = straighten(verts, decorations=[2.0, None, 0.5, None])
print("ideal vertices:", s.ideal_mask)

# %%
t = rng.dirichlet(np.ones(4), size=5)
g = boost(1.2, axis=1) @ boost(-0.4, axis=0)
moved = apply_isometry(g, s)(t)
h = np.hstack([s(t), np.ones((5, 1))]) @ g.T
print("max naturality gap:", np.abs(moved - h[:, :3] / h[:, 3:]).max())

# %%
# Dihedral angles of a regular ideal tetrahedron are all pi/3.
dirs = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) / np.sqrt(3)
print(dihedral_angles(straighten(dirs)) / np.pi)
