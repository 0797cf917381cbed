"""Hyperbolic gluing equations in one complex unknown per tetrahedron.

Tetrahedron ``t`` carries ``z_t`` on its quad q=0; the parameter relation puts
``1/(1-z)`` and ``(z-1)/z`` on the next quads of the 3-cycle. Edge ``e`` then
reads::

    prod_t z^a (1/(1-z))^b ((z-1)/z)^c = prod_t (-1)^c z^(a-c) (1-z)^(c-b) = 1

with ``(a, b, c)`` the exponents ``i(q, e)`` of the three quads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .shapes import SHAPE_EPS, ShapeError
from .triangulation import Triangulation, gluing_matrix, quad_classes_and_tau

__all__ = [
    "FLAT_TOL",
    "GluingSystem",
    "OVERFLOW_BOUND",
    "angle_report",
    "block_system",
    "expand",
    "gluing_system",
    "jacobian",
    "residual",
]

OVERFLOW_BOUND = 1e12
# |Im z| at or below this counts as a flat tetrahedron
FLAT_TOL = 1e-10


@dataclass(frozen=True)
class GluingSystem:
    """Exponents of ``z``, ``1/(1-z)`` and ``(z-1)/z`` per (edge, tet)."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    @property
    def edge_count(self) -> int:
        return self.a.shape[0]

    @property
    def tet_count(self) -> int:
        return self.a.shape[1]

    @property
    def matrix(self) -> np.ndarray:
        """The exponent matrix ``i(q, e)`` with columns ordered ``(tet, z, 1/(1-z), (z-1)/z)``."""
        E, T = self.a.shape
        M = np.empty((E, 3 * T), dtype=np.int64)
        M[:, 0::3], M[:, 1::3], M[:, 2::3] = self.a, self.b, self.c
        return M

    @cached_property
    def _zpow(self):
        return self.a - self.c

    @cached_property
    def _wpow(self):
        return self.c - self.b

    @cached_property
    def _sign(self):
        return np.where(self.c.sum(axis=1) % 2 == 0, 1.0, -1.0)


def gluing_system(T: Triangulation) -> GluingSystem:
    M = gluing_matrix(T)
    _, taus = quad_classes_and_tau(T)
    E = M.shape[0]
    cols = np.zeros((3, E, T.tet_count), dtype=np.int64)
    for t, tau in enumerate(taus):
        q = 0
        for k in range(3):
            cols[k, :, t] = M[:, 3 * t + q]
            q = tau[q]
    return GluingSystem(cols[0], cols[1], cols[2])


def block_system(*systems: GluingSystem) -> GluingSystem:
    """Disjoint union: edges and tetrahedra of the parts do not interact."""
    E = sum(s.edge_count for s in systems)
    T = sum(s.tet_count for s in systems)
    out = [np.zeros((E, T), dtype=np.int64) for _ in range(3)]
    e0 = t0 = 0
    for s in systems:
        for arr, part in zip(out, (s.a, s.b, s.c)):
            arr[e0 : e0 + s.edge_count, t0 : t0 + s.tet_count] = part
        e0 += s.edge_count
        t0 += s.tet_count
    return GluingSystem(*out)


def _check(z, guard: bool = False) -> np.ndarray:
    z = np.asarray(z, dtype=complex).reshape(-1)
    if z.size == 0:
        return z
    az = np.abs(z)
    aw = np.abs(1 - z)
    m = np.concatenate((az, aw))
    # NaN fails both comparisons
    if not (m.min() >= SHAPE_EPS and m.max() < math.inf):
        raise ShapeError("shape parameter non-finite or at 0 or 1")
    if guard:
        # moduli of z, 1/(1-z) and (z-1)/z
        m = np.concatenate((az, aw, aw / az))
        if m.min() * OVERFLOW_BOUND < 1 or m.max() > OVERFLOW_BOUND:
            raise ShapeError("shape parameters outside the overflow guard")
    return z


def expand(z) -> np.ndarray:
    """Per-quad values ``(z, 1/(1-z), (z-1)/z)`` for every tetrahedron, flattened."""
    z = _check(z)
    out = np.empty(3 * z.size, dtype=complex)
    out[0::3] = z
    out[1::3] = 1 / (1 - z)
    out[2::3] = (z - 1) / z
    return out


def _products(S: GluingSystem, z: np.ndarray) -> np.ndarray:
    z = _check(z, guard=True)
    if z.size != S.tet_count:
        raise ValueError(f"expected {S.tet_count} shapes, got {z.size}")
    w = 1 - z
    terms = z[None, :] ** S._zpow * w[None, :] ** S._wpow
    return S._sign * np.prod(terms, axis=1)


def residual(S: GluingSystem, z) -> np.ndarray:
    """``prod_q z_q^i(q,e) - 1`` for every edge."""
    if S.tet_count == 0:
        return np.zeros(S.edge_count, dtype=complex)
    return _products(S, z) - 1


def jacobian(S: GluingSystem, z, products=None) -> np.ndarray:
    """``d residual_e / d z_t = P_e * ((a-c)/z - (c-b)/(1-z))``.

    ``products`` may pass in the edge products ``P = residual + 1`` when the
    caller already has them.
    """
    z = np.asarray(z, dtype=complex).reshape(-1)
    P = _products(S, z) if products is None else products
    return P[:, None] * (S._zpow / z[None, :] - S._wpow / (1 - z)[None, :])


@dataclass
class AngleReport:
    edge_angle_sums: np.ndarray
    edge_angle_mod: np.ndarray
    orientation: list[str]

    def census(self) -> dict[str, int]:
        return {k: self.orientation.count(k) for k in ("positive", "flat", "negative")}

    def to_dict(self) -> dict:
        return {
            "edge_angle_sums": [float(x) for x in self.edge_angle_sums],
            "edge_angle_mod_2pi": [float(x) for x in self.edge_angle_mod],
            "orientation": self.orientation,
        }


def classify(z: complex, tol: float = FLAT_TOL) -> str:
    if z.imag > tol:
        return "positive"
    if z.imag < -tol:
        return "negative"
    return "flat"


def angle_report(S: GluingSystem, z) -> AngleReport:
    """Per-edge sums of principal arguments and per-tet orientation classes."""
    z = _check(z)
    q = expand(z)
    args = np.angle(q)
    sums = S.matrix @ args
    # reduce into [-pi, pi)
    red = np.mod(sums + math.pi, 2 * math.pi) - math.pi
    return AngleReport(sums, red, [classify(x) for x in z])
