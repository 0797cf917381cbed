"""Straight simplices whose vertices run out along geodesic rays.

Each vertex follows ``gamma_i(t) = u_i cosh t + w_i sinh t`` on the hyperboloid.
Dividing the affine simplex by ``cosh t`` gives the lifts ``u_i + w_i tanh t``,
which converge to the lightlike vectors ``u_i + w_i``; their straightening is
the ideal limit simplex.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .hypgeom import (
    GeometryError,
    StraightSimplex,
    dihedral_angles,
    hyperbolic_distance,
    lift_interior,
    mink_inner,
    radial_project,
)
from .shapes import INF, cross_ratio, tet_volume

__all__ = [
    "SpinScenario",
    "cosh_ratio",
    "ideal_limit",
    "ideal_shape",
    "model_scenario",
    "random_scenario",
    "scenario_from_dict",
    "spin_report",
    "spin_step",
    "stereographic",
    "symmetric_scenario",
]

ORTHO_TOL = 1e-10
ENDPOINT_SEPARATION = 1e-6
# stereographic projection of the sphere at infinity is taken from this pole
POLE = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True)
class SpinScenario:
    base: np.ndarray
    directions: np.ndarray
    times: tuple[float, ...] = tuple(float(t) for t in range(31))

    def __post_init__(self):
        u = np.array(self.base, dtype=float)
        w = np.array(self.directions, dtype=float)
        if u.shape != (4, 4) or w.shape != (4, 4):
            raise GeometryError("a scenario needs four base points and four directions in E^{3,1}")
        for i in range(4):
            if (
                abs(mink_inner(u[i], u[i]) + 1) > ORTHO_TOL
                or abs(mink_inner(w[i], w[i]) - 1) > ORTHO_TOL
                or abs(mink_inner(u[i], w[i])) > ORTHO_TOL
                or not u[i, 3] > 0
            ):
                raise GeometryError(f"ray {i}: need <u,u> = -1, <w,w> = 1, <u,w> = 0")
        times = tuple(float(t) for t in self.times)
        if any(t < 0 for t in times) or any(b <= a for a, b in zip(times, times[1:])):
            raise GeometryError("time grid must be increasing and nonnegative")
        ends = np.array([radial_project(u[i] + w[i]) for i in range(4)])
        for i in range(4):
            for j in range(i + 1, 4):
                if np.linalg.norm(ends[i] - ends[j]) <= ENDPOINT_SEPARATION:
                    raise GeometryError(f"rays {i} and {j} share an endpoint")
        u.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "base", u)
        object.__setattr__(self, "directions", w)
        object.__setattr__(self, "times", times)

    @property
    def endpoints(self) -> np.ndarray:
        return np.array([radial_project(self.base[i] + self.directions[i]) for i in range(4)])

    def vertex(self, i: int, t: float) -> np.ndarray:
        return self.base[i] * math.cosh(t) + self.directions[i] * math.sinh(t)

    def to_dict(self) -> dict:
        return {
            "base": self.base.tolist(),
            "directions": self.directions.tolist(),
            "times": list(self.times),
        }


def scenario_from_dict(doc: dict) -> SpinScenario:
    unknown = set(doc) - {"base", "directions", "times"}
    if unknown:
        raise GeometryError(f"unknown scenario keys: {sorted(unknown)}")
    kwargs = {"base": doc["base"], "directions": doc["directions"]}
    if "times" in doc:
        kwargs["times"] = tuple(doc["times"])
    return SpinScenario(**kwargs)


def spin_step(sc: SpinScenario, t: float) -> StraightSimplex:
    if t < 0:
        raise GeometryError("negative time")
    return StraightSimplex(np.array([sc.vertex(i, t) for i in range(4)]))


def cosh_ratio(sc: SpinScenario, i: int, t: float) -> float:
    """Time coordinate of ``gamma_i(t)`` over ``cosh t``."""
    return float(sc.vertex(i, t)[3] / math.cosh(t))


def ideal_limit(sc: SpinScenario) -> StraightSimplex:
    """Ideal simplex on the lightlike lifts ``u_i + w_i``."""
    return StraightSimplex(sc.base + sc.directions)


def stereographic(x) -> complex:
    """Unit sphere to the Riemann sphere, projecting from ``POLE`` (which goes to ``INF``)."""
    x = np.asarray(x, dtype=float)
    x = x / np.linalg.norm(x)
    den = 1.0 - x @ POLE
    if abs(den) < 1e-15:
        return INF
    return complex(x[0], x[1]) / den


def ideal_shape(s: StraightSimplex) -> complex:
    """Edge invariant at edge 01 of an ideal 3-simplex, ``(v0, v1; v2, v3)``."""
    pts = [stereographic(v) for v in s.vertices]
    return cross_ratio(*pts)


@dataclass
class SpinRow:
    t: float
    endpoint_distance: list[float]
    cosh_ratio: list[float]
    hyperbolic_distance: list[float]
    angles: list[float]
    angle_error: float

    def as_list(self) -> list:
        return [self.t, *self.endpoint_distance, *self.cosh_ratio, *self.hyperbolic_distance, *self.angles, self.angle_error]


@dataclass
class SpinReport:
    rows: list[SpinRow]
    limit_vertices: np.ndarray
    limit_angles: np.ndarray
    limit_shape: complex
    limit_volume: float
    decay_constant: float = field(default=math.nan)

    COLUMNS = (
        ["t"]
        + [f"endpoint_dist_{i}" for i in range(4)]
        + [f"cosh_ratio_{i}" for i in range(4)]
        + [f"hyp_dist_{i}" for i in range(4)]
        + [f"angle_{e}" for e in ("01", "02", "03", "12", "13", "23")]
        + ["max_angle_error"]
    )

    def to_dict(self) -> dict:
        return {
            "columns": list(self.COLUMNS),
            "rows": [row.as_list() for row in self.rows],
            "limit": {
                "vertices": self.limit_vertices.tolist(),
                "angles": self.limit_angles.tolist(),
                "shape": {"re": self.limit_shape.real, "im": self.limit_shape.imag},
                "volume": self.limit_volume,
            },
            "angle_decay_constant": self.decay_constant,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.COLUMNS)
        for row in self.rows:
            writer.writerow([repr(float(x)) for x in row.as_list()])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def spin_report(sc: SpinScenario) -> SpinReport:
    """Convergence table over the scenario's time grid.

    Angles of a degenerate simplex (e.g. all rays leaving one point at t=0)
    are reported as NaN. The decay constant is the smallest ``C`` with
    ``angle_error(t) <= C exp(-t)`` on the grid.
    """
    limit = ideal_limit(sc)
    ends = sc.endpoints
    limit_angles = dihedral_angles(limit)
    shape = ideal_shape(limit)
    rows = []
    for t in sc.times:
        simplex = spin_step(sc, t)
        dist = [float(np.linalg.norm(v - e)) for v, e in zip(simplex.vertices, ends)]
        ratios = [cosh_ratio(sc, i, t) for i in range(4)]
        hyp = [hyperbolic_distance(sc.base[i], sc.vertex(i, t)) for i in range(4)]
        try:
            ang = dihedral_angles(simplex)
            err = float(np.max(np.abs(ang - limit_angles)))
        except GeometryError:
            ang = np.full(6, math.nan)
            err = math.nan
        rows.append(SpinRow(t, dist, ratios, hyp, [float(a) for a in ang], err))
    fit = [r.angle_error * math.exp(r.t) for r in rows if math.isfinite(r.angle_error) and r.angle_error > 0]
    return SpinReport(rows, ends, limit_angles, shape, tet_volume(shape), max(fit) if fit else math.nan)


def _ray_through(u, direction) -> np.ndarray:
    """Unit tangent at ``u`` pointing along the spatial ``direction``."""
    d = np.append(np.asarray(direction, dtype=float), 0.0)
    w = d + mink_inner(d, u) * u
    return w / math.sqrt(mink_inner(w, w))


def symmetric_scenario(start: float = 1.0) -> SpinScenario:
    """Rays from the origin towards a regular ideal tetrahedron, started at distance ``start``.

    The vertex order makes the limit shape ``exp(i pi/3)`` under ``stereographic``.
    """
    dirs = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float) / math.sqrt(3)
    base, tangents = [], []
    for d in dirs:
        base.append(np.append(d * math.sinh(start), math.cosh(start)))
        tangents.append(np.append(d * math.cosh(start), math.sinh(start)))
    return SpinScenario(np.array(base), np.array(tangents))


def model_scenario() -> SpinScenario:
    """Four copies of the model geodesic (sinh t, 0, 0, cosh t), rotated to distinct axes."""
    dirs = np.array([[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, 0, 0]], dtype=float)
    base = np.tile([0.0, 0.0, 0.0, 1.0], (4, 1))
    tangents = np.hstack([dirs, np.zeros((4, 1))])
    return SpinScenario(base, tangents)


def random_scenario(rng: np.random.Generator, radius: float = 0.8) -> SpinScenario:
    """Base points uniform in a Klein ball of ``radius``; directions uniform on the sphere."""
    while True:
        base, tangents = [], []
        for _ in range(4):
            while True:
                v = rng.uniform(-radius, radius, 3)
                if np.linalg.norm(v) < radius:
                    break
            u = lift_interior(v)
            d = rng.normal(size=3)
            base.append(u)
            tangents.append(_ray_through(u, d / np.linalg.norm(d)))
        try:
            return SpinScenario(np.array(base), np.array(tangents))
        except GeometryError:
            continue
