import math

import numpy as np
import pytest

from hypgluing.equations import (
    angle_report,
    block_system,
    expand,
    gluing_system,
    jacobian,
    residual,
)
from hypgluing.shapes import ShapeError

from conftest import solutions, subdivided, system
from oracles import finite_difference_jacobian


def test_expand_examples():
    assert np.allclose(expand([-1]), [-1, 0.5, 2], atol=0)
    out = expand([1j])
    assert np.allclose(out, [1j, (1 + 1j) / 2, 1 + 1j], atol=1e-15)
    assert abs(np.prod(out) + 1) < 1e-15


@pytest.mark.parametrize("bad", [0.0, 1.0])
def test_expand_rejects_excluded(bad):
    with pytest.raises(ShapeError):
        expand([bad])


def test_lens_residual():
    S = system("lens_4_1")
    assert np.max(np.abs(residual(S, [-1]))) < 1e-14
    assert np.max(np.abs(residual(S, [0.3 + 0.7j]))) > 0.1


def test_lens_system_rows():
    S = system("lens_4_1")
    assert S.edge_count == 2 and S.tet_count == 1
    assert S.matrix.tolist() == [[2, 0, 0], [0, 2, 2]]


def test_overflow_guard():
    S = system("lens_4_1")
    with pytest.raises(ShapeError):
        residual(S, [1e13])
    with pytest.raises(ShapeError):
        residual(S, [1 + 1e-13])


def test_single_tet_jacobian():
    S = system("lens_5_2")
    z = np.array([2 + 1j])
    fd = finite_difference_jacobian(lambda w: residual(S, w), z)
    J = jacobian(S, z)
    assert np.max(np.abs(J - fd)) / np.max(np.abs(J)) < 1e-6


@pytest.mark.parametrize("name", ["lens_4_1", "lens_5_2", "poincare", "weeks"])
def test_jacobian_vs_differences(name, rng):
    S = system(name)
    for _ in range(10):
        z = rng.uniform(-2, 3, S.tet_count) + 1j * rng.uniform(0.2, 2.5, S.tet_count)
        J = jacobian(S, z)
        fd = finite_difference_jacobian(lambda w: residual(S, w), z)
        assert np.max(np.abs(J - fd)) / np.max(np.abs(J)) < 1e-6


def test_block_system_is_independent():
    a, b = system("lens_4_1"), system("weeks")
    S = block_system(a, b)
    assert (S.edge_count, S.tet_count) == (a.edge_count + b.edge_count, a.tet_count + b.tet_count)
    w = solutions("weeks", 0, 64)[0].z
    z = np.concatenate([[-1], w])
    assert np.max(np.abs(residual(S, z))) < 1e-10
    assert np.all(jacobian(S, z)[: a.edge_count, a.tet_count :] == 0)


def test_subdivided_system_shape():
    S = gluing_system(subdivided("lens_4_1"))
    assert S.tet_count == 24
    assert np.all(S.matrix.sum(axis=0) == 2)


def test_empty_system():
    S = block_system()
    assert residual(S, []).size == 0


def test_lens_angles():
    rep = angle_report(system("lens_4_1"), [-1])
    assert rep.orientation == ["flat"]
    # every edge of a solution carries angle 0 mod 2 pi
    assert np.max(np.abs(rep.edge_angle_mod)) < 1e-12
    assert rep.census() == {"positive": 0, "flat": 1, "negative": 0}


def test_weeks_angles():
    rec = solutions("weeks", 0, 64)[0]
    rep = angle_report(system("weeks"), rec.z)
    assert np.max(np.abs(rep.edge_angle_mod)) < 1e-9
    # every sum is a multiple of 2 pi
    k = rep.edge_angle_sums / (2 * math.pi)
    assert np.max(np.abs(k - np.round(k))) < 1e-9
    assert rep.census()["positive"] < 9
