"""Minkowski space, the hyperboloid and Klein models, and straight simplices.

Vectors are numpy arrays of length n+1 with the time coordinate last, so the
Minkowski form is ``diag(1, ..., 1, -1)``. Klein points are arrays of length n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "BOUNDARY_TOL",
    "GeometryError",
    "StraightSimplex",
    "apply_isometry",
    "boost",
    "dihedral_angles",
    "geodesic_ray",
    "hyperbolic_distance",
    "is_lorentz",
    "lift_interior",
    "minkowski_form",
    "mink_inner",
    "radial_project",
    "snap_klein",
    "straighten",
]

BOUNDARY_TOL = 1e-9


class GeometryError(ValueError):
    pass


def minkowski_form(n: int = 3) -> np.ndarray:
    J = np.eye(n + 1)
    J[n, n] = -1.0
    return J


def mink_inner(x, y) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise GeometryError(f"dimension mismatch {x.shape} vs {y.shape}")
    return float(x[:-1] @ y[:-1] - x[-1] * y[-1])


def radial_project(x) -> np.ndarray:
    """Klein point ``x[:n] / x[n]`` of a vector with positive time coordinate."""
    x = np.asarray(x, dtype=float)
    if not x[-1] > 0:
        raise GeometryError("radial projection needs a positive last coordinate")
    return x[:-1] / x[-1]


def snap_klein(v) -> tuple[np.ndarray, bool]:
    """Return ``(point, on_boundary)``; near-boundary points are put on the sphere."""
    v = np.asarray(v, dtype=float)
    r = float(np.linalg.norm(v))
    if abs(1.0 - r) < BOUNDARY_TOL:
        return v / r, True
    if r > 1.0:
        raise GeometryError(f"point outside the closed Klein ball (|v| = {r})")
    return v, False


def lift_interior(v) -> np.ndarray:
    """The point of the hyperboloid that projects to the interior Klein point ``v``."""
    v, boundary = snap_klein(v)
    if boundary:
        raise GeometryError("boundary point has no lift to the hyperboloid")
    s = 1.0 / np.sqrt(1.0 - v @ v)
    return np.append(v * s, s)


def hyperbolic_distance(x, y) -> float:
    """Distance between two hyperboloid points.

    ``arccosh(-<x,y>)`` is ill-conditioned near 0, the chord form
    ``2 asinh(|x - y|_M / 2)`` cancels badly for far-apart points; each is
    used where it is accurate.
    """
    c = -mink_inner(x, y)
    if c > 1.5:
        return float(np.arccosh(c))
    d = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
    q = max(mink_inner(d, d), 0.0)
    return float(2.0 * np.arcsinh(np.sqrt(q) / 2.0))


@dataclass(frozen=True)
class StraightSimplex:
    """Straight simplex given by Minkowski lifts of its vertices (one per row)."""

    lifts: np.ndarray

    def __post_init__(self):
        u = np.array(self.lifts, dtype=float)
        if u.ndim != 2 or u.shape[0] < 1:
            raise GeometryError("lifts must be a (k+1, n+1) array")
        for row in u:
            if not row[-1] > 0 or mink_inner(row, row) > 1e-9 * row[-1] ** 2:
                raise GeometryError("lifts must lie in the closed future cone")
        u.setflags(write=False)
        object.__setattr__(self, "lifts", u)

    @property
    def k(self) -> int:
        return self.lifts.shape[0] - 1

    @property
    def ideal_mask(self) -> np.ndarray:
        u = self.lifts
        norms = np.einsum("ij,ij->i", u[:, :-1], u[:, :-1]) - u[:, -1] ** 2
        return np.abs(norms) <= 1e-9 * u[:, -1] ** 2

    @property
    def is_ideal(self) -> bool:
        return bool(np.all(self.ideal_mask))

    @property
    def is_compact(self) -> bool:
        return not bool(np.any(self.ideal_mask))

    @property
    def vertices(self) -> np.ndarray:
        return self.lifts[:, :-1] / self.lifts[:, -1:]

    def affine(self, t) -> np.ndarray:
        """The affine simplex ``sum t_i u_i`` (rows of ``t`` are barycentric coordinates)."""
        return np.asarray(t, dtype=float) @ self.lifts

    def __call__(self, t) -> np.ndarray:
        x = self.affine(t)
        return x[..., :-1] / x[..., -1:]

    def face(self, indices) -> StraightSimplex:
        return StraightSimplex(self.lifts[list(indices)])


def straighten(vertices, decorations=None) -> StraightSimplex:
    """Straight simplex on Klein points; ideal vertices take a decoration (default 1)."""
    vertices = np.atleast_2d(np.asarray(vertices, dtype=float))
    lifts = []
    for i, v in enumerate(vertices):
        v, boundary = snap_klein(v)
        if boundary:
            d = 1.0 if decorations is None or decorations[i] is None else float(decorations[i])
            if not d > 0:
                raise GeometryError(f"decoration of vertex {i} must be positive")
            lifts.append(d * np.append(v, 1.0))
        else:
            lifts.append(lift_interior(v))
    return StraightSimplex(np.array(lifts))


def is_lorentz(g, tol: float = 1e-10) -> bool:
    g = np.asarray(g, dtype=float)
    J = minkowski_form(g.shape[0] - 1)
    return bool(np.max(np.abs(g.T @ J @ g - J)) < tol * max(1.0, np.max(np.abs(g)) ** 2)) and g[-1, -1] > 0


def apply_isometry(g, s: StraightSimplex) -> StraightSimplex:
    g = np.asarray(g, dtype=float)
    if g.shape != (s.lifts.shape[1],) * 2 or not is_lorentz(g):
        raise GeometryError("not a time-orientation preserving Lorentz matrix")
    return StraightSimplex(s.lifts @ g.T)


def boost(rapidity: float, axis: int = 0, n: int = 3) -> np.ndarray:
    g = np.eye(n + 1)
    c, s = np.cosh(rapidity), np.sinh(rapidity)
    g[axis, axis] = g[n, n] = c
    g[axis, n] = g[n, axis] = s
    return g


def geodesic_ray(u, w, t: float) -> np.ndarray:
    """Unit speed geodesic ``u cosh t + w sinh t`` on the hyperboloid."""
    u = np.asarray(u, dtype=float)
    w = np.asarray(w, dtype=float)
    if (
        abs(mink_inner(u, u) + 1) > 1e-10
        or abs(mink_inner(w, w) - 1) > 1e-10
        or abs(mink_inner(u, w)) > 1e-10
        or not u[-1] > 0
    ):
        raise GeometryError("need <u,u> = -1, <w,w> = 1 and <u,w> = 0")
    return u * np.cosh(t) + w * np.sinh(t)


def dihedral_angles(s: StraightSimplex) -> np.ndarray:
    """Six dihedral angles of a 3-simplex in edge order 01,02,03,12,13,23.

    The angle at edge ``ab`` is the angle between the faces opposite the other
    two vertices, computed from outward unit normals of the face hyperplanes.
    """
    if s.lifts.shape != (4, 4):
        raise GeometryError("dihedral angles need a 3-simplex in H^3")
    # rescaling a lift does not move its face hyperplanes
    u = s.lifts / s.lifts[:, -1:]
    J = minkowski_form(3)
    A = u @ J
    if abs(np.linalg.det(A)) < 1e-14:
        raise GeometryError("degenerate simplex")
    # column i of inv(A) pairs to 1 with u_i and 0 with the others
    N = -np.linalg.inv(A).T
    norms = np.einsum("ij,jk,ik->i", N, J, N)
    if np.any(norms <= 0):
        raise GeometryError("degenerate simplex")
    N = N / np.sqrt(norms)[:, None]
    G = N @ J @ N.T
    out = np.empty(6)
    pairs = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    for k, (a, b) in enumerate(pairs):
        c, d = (x for x in range(4) if x not in (a, b))
        out[k] = np.arccos(np.clip(-G[c, d], -1.0, 1.0))
    return out
