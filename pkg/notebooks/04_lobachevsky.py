"""
The Lobachevsky function and ideal tetrahedron volumes
======================================================

Compare the series evaluation with direct quadrature of the defining
integral, then compute the regular ideal tetrahedron.
"""

# %%
import cmath
import math

import mpmath
import numpy as np

from hypgluing.shapes import lobachevsky, tet_volume


def by_quadrature(theta):
    return float(-mpmath.quad(lambda s: mpmath.log(abs(2 * mpmath.sin(s))), [0, theta]))


# %%
thetas = np.linspace(0.05, math.pi - 0.05, 9)
for t in thetas:
    print(f"{t:.3f}  {lobachevsky(t): .15f}  {by_quadrature(t): .15f}")

# %%
# Maximum at pi/6, zeros at multiples of pi/2.
print(lobachevsky(math.pi / 6), lobachevsky(math.pi / 2), lobachevsky(math.pi))

# %%
z = cmath.exp(1j * math.pi / 3)
print("regular ideal tetrahedron:", tet_volume(z), 3 * by_quadrature(math.pi / 3))
print("mirror image:", tet_volume(z.conjugate()))
