import cmath
import math

import numpy as np
import pytest

from hypgluing.hypgeom import (
    GeometryError,
    StraightSimplex,
    apply_isometry,
    boost,
    dihedral_angles,
    geodesic_ray,
    hyperbolic_distance,
    is_lorentz,
    lift_interior,
    mink_inner,
    radial_project,
    snap_klein,
    straighten,
)
from hypgluing.spinning import ideal_shape

from conftest import random_lorentz


def random_ball(rng, radius=0.9):
    while True:
        v = rng.uniform(-radius, radius, 3)
        if np.linalg.norm(v) < radius:
            return v


def random_sphere(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def test_inner_products():
    assert mink_inner([0, 0, 0, 1], [0, 0, 0, 1]) == -1
    assert mink_inner([1, 0, 0, 1], [1, 0, 0, 1]) == 0
    with pytest.raises(GeometryError):
        mink_inner([0, 0, 1], [0, 0, 0, 1])


def test_radial_projection(rng):
    assert np.array_equal(radial_project([0, 0, 0, 1]), np.zeros(3))
    assert np.array_equal(radial_project([1, 0, 0, 1]), [1, 0, 0])
    with pytest.raises(GeometryError):
        radial_project([1, 0, 0, -1])
    for _ in range(50):
        x = np.append(rng.normal(size=3), 5.0)
        assert np.max(np.abs(radial_project(3.7 * x) - radial_project(x))) < 1e-14


def test_lift_round_trip(rng):
    assert np.array_equal(lift_interior(np.zeros(3)), [0, 0, 0, 1])
    for _ in range(100):
        v = random_ball(rng, 0.99)
        u = lift_interior(v)
        assert abs(mink_inner(u, u) + 1) < 1e-12
        assert np.max(np.abs(radial_project(u) - v)) < 1e-13
    with pytest.raises(GeometryError):
        lift_interior([1.0, 0, 0])
    with pytest.raises(GeometryError):
        snap_klein([1.5, 0, 0])


def test_boundary_snap():
    v, on = snap_klein([1 - 1e-11, 0, 0])
    assert on and v[0] == 1.0


def test_straighten_vertices(rng):
    verts = [random_ball(rng), random_sphere(rng), random_ball(rng), random_sphere(rng)]
    s = straighten(verts, [None, 2.0, None, 0.5])
    assert np.max(np.abs(s(np.eye(4)) - np.array(verts))) < 1e-13
    assert list(s.ideal_mask) == [False, True, False, True]
    with pytest.raises(GeometryError):
        straighten(verts, [None, 0.0, None, 1.0])


def test_single_vertex_is_constant(rng):
    v = random_ball(rng)
    s = straighten([v])
    assert np.allclose(s(np.ones((5, 1))), v, atol=1e-14)


def test_regular_barycenter():
    dirs = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) / math.sqrt(3)
    s = straighten(dirs)
    assert np.max(np.abs(s(np.full(4, 0.25)))) < 1e-15


@pytest.mark.parametrize("ideal", [0, 2, 4])
def test_face_restriction(rng, ideal):
    verts = [random_sphere(rng) if i < ideal else random_ball(rng) for i in range(4)]
    dec = [rng.uniform(0.2, 5) if i < ideal else None for i in range(4)]
    s = straighten(verts, dec)
    face = (0, 2, 3)
    t = rng.dirichlet(np.ones(3), size=50)
    full = np.zeros((50, 4))
    full[:, face] = t
    sub = straighten([verts[i] for i in face], [dec[i] for i in face])
    assert np.max(np.abs(s(full) - sub(t))) < 1e-12


def test_isometry_identity_and_errors(rng):
    s = straighten([random_ball(rng) for _ in range(4)])
    assert np.array_equal(apply_isometry(np.eye(4), s).lifts, s.lifts)
    with pytest.raises(GeometryError):
        apply_isometry(np.diag([1, 1, 1, -1.0]), s)
    with pytest.raises(GeometryError):
        apply_isometry(2 * np.eye(4), s)


def test_boost_composition(rng):
    s = straighten([random_ball(rng) for _ in range(4)])
    a, b = boost(0.7, 0), boost(-1.3, 2)
    lhs = apply_isometry(a, apply_isometry(b, s))
    rhs = apply_isometry(a @ b, s)
    assert np.max(np.abs(lhs.lifts - rhs.lifts)) < 1e-12


def test_naturality_random_boost(rng):
    s = straighten([random_ball(rng), random_sphere(rng), random_ball(rng), random_sphere(rng)])
    g = random_lorentz(rng)
    assert is_lorentz(g)
    t = rng.dirichlet(np.ones(4), size=50)
    moved = apply_isometry(g, s)(t)
    lifted = np.hstack([s(t), np.ones((50, 1))]) @ g.T
    assert np.max(np.abs(moved - lifted[:, :3] / lifted[:, 3:])) < 1e-10


def test_geodesic_ray():
    u, w = np.array([0, 0, 0, 1.0]), np.array([1.0, 0, 0, 0])
    for t in (0.0, 0.5, 3.0, 30.0):
        x = geodesic_ray(u, w, t)
        assert np.allclose(x, [math.sinh(t), 0, 0, math.cosh(t)], rtol=1e-15)
        # coordinates grow like cosh t, so the form is exact only relative to cosh^2 t
        assert abs(mink_inner(x, x) + 1) < 1e-10 * math.cosh(t) ** 2
    assert np.array_equal(geodesic_ray(u, w, 0.0), u)
    with pytest.raises(GeometryError):
        geodesic_ray(u, np.array([1.0, 0, 0, 0.5]), 1.0)


def test_geodesic_ray_invariants(rng):
    for _ in range(20):
        u = lift_interior(random_ball(rng, 0.8))
        d = np.append(random_sphere(rng), 0.0)
        w = d + mink_inner(d, u) * u
        w /= math.sqrt(mink_inner(w, w))
        for t in np.linspace(0, 10, 11):
            x = geodesic_ray(u, w, t)
            xdot = u * math.sinh(t) + w * math.cosh(t)
            scale = math.cosh(t) ** 2
            assert abs(mink_inner(x, x) + 1) < 1e-10 * scale
            assert abs(mink_inner(x, xdot)) < 1e-10 * scale
            assert hyperbolic_distance(u, x) == pytest.approx(t, abs=1e-9)


def test_regular_ideal_angles():
    dirs = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) / math.sqrt(3)
    assert np.max(np.abs(dihedral_angles(straighten(dirs)) - math.pi / 3)) < 1e-10


def _vertex_sums(a):
    # edges at each vertex in slot order 01,02,03,12,13,23
    at = [(0, 1, 2), (0, 3, 4), (1, 3, 5), (2, 4, 5)]
    return [a[list(ix)].sum() for ix in at]


def test_ideal_angle_sums_and_shape(rng):
    for _ in range(20):
        verts = np.array([random_sphere(rng) for _ in range(4)])
        s = straighten(verts, rng.uniform(0.1, 10, 4))
        a = dihedral_angles(s)
        assert np.max(np.abs(np.array(_vertex_sums(a)) - math.pi)) < 1e-10
        assert np.max(np.abs(a[:3] - a[::-1][:3])) < 1e-10
        # the angle at edge 01 is the argument of its edge invariant, up to orientation
        z = ideal_shape(s)
        assert abs(abs(cmath.phase(z)) - a[0]) < 1e-9


def test_decorations_do_not_move_angles(rng):
    verts = np.array([random_sphere(rng) for _ in range(4)])
    a = dihedral_angles(straighten(verts))
    b = dihedral_angles(straighten(verts, rng.uniform(0.01, 100, 4)))
    assert np.max(np.abs(a - b)) < 1e-12


def test_compact_angles_invariant(rng):
    for _ in range(20):
        s = straighten([random_ball(rng) for _ in range(4)])
        g = random_lorentz(rng, 1.0)
        assert np.max(np.abs(dihedral_angles(s) - dihedral_angles(apply_isometry(g, s)))) < 1e-10


def test_degenerate_simplex():
    verts = [[0.1, 0, 0], [0, 0.1, 0], [-0.1, 0, 0], [0, -0.1, 0]]
    with pytest.raises(GeometryError):
        dihedral_angles(straighten(verts))


def test_simplex_rejects_spacelike():
    with pytest.raises(GeometryError):
        StraightSimplex(np.array([[2.0, 0, 0, 1]]))
