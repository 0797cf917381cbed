import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypgluing.shapes import INF, ShapeError, cross_ratio, lobachevsky, shape_triple, tet_volume

from oracles import lobachevsky_quad, regular_volume


def test_lobachevsky_zeros():
    assert lobachevsky(0.0) == 0.0
    assert abs(lobachevsky(math.pi / 2)) <= 1e-15
    assert abs(lobachevsky(math.pi)) <= 1e-15


def test_lobachevsky_pi_over_three():
    # the quadrature gives 0.338313868803..., with 3 * value = 1.0149416064...
    assert lobachevsky(math.pi / 3) == pytest.approx(0.33831386880321795, abs=1e-14)


@pytest.mark.parametrize("theta", np.linspace(-3.1, 3.1, 25))
def test_lobachevsky_vs_quadrature(theta):
    assert abs(lobachevsky(theta) - lobachevsky_quad(theta)) < 1e-12


@given(st.floats(-20, 20))
@settings(max_examples=200)
def test_lobachevsky_odd_and_periodic(theta):
    assert lobachevsky(-theta) == pytest.approx(-lobachevsky(theta), abs=1e-15)
    assert lobachevsky(theta + math.pi) == pytest.approx(lobachevsky(theta), abs=1e-13)


@given(st.floats(-3, 3))
@settings(max_examples=100)
def test_duplication(theta):
    lhs = lobachevsky(2 * theta)
    rhs = 2 * (lobachevsky(theta) + lobachevsky(theta + math.pi / 2))
    assert lhs == pytest.approx(rhs, abs=1e-13)


def test_regular_volume():
    assert tet_volume(cmath.exp(1j * math.pi / 3)) == pytest.approx(regular_volume(), abs=1e-12)
    assert tet_volume(cmath.exp(1j * math.pi / 3)) == pytest.approx(1.0149416064096536, abs=1e-12)


@given(st.complex_numbers(max_magnitude=50, allow_nan=False, allow_infinity=False))
@settings(max_examples=200)
def test_volume_symmetries(z):
    if abs(z) < 1e-3 or abs(1 - z) < 1e-3:
        return
    v = tet_volume(z)
    assert tet_volume(z.conjugate()) == pytest.approx(-v, abs=1e-12)
    for w in shape_triple(z):
        assert tet_volume(w) == pytest.approx(v, abs=1e-11)
    if z.imag == 0:
        assert v == 0.0


def test_shape_triple_product():
    z = 0.4 + 1.3j
    a, b, c = shape_triple(z)
    assert abs(a * b * c + 1) < 1e-15
    assert (a, b, c) == (z, 1 / (1 - z), (z - 1) / z)


@pytest.mark.parametrize("bad", [0, 1, complex("nan"), INF])
def test_shape_errors(bad):
    with pytest.raises(ShapeError):
        shape_triple(bad)


def test_cross_ratio_standard():
    z = 2 - 0.5j
    assert cross_ratio(0, INF, z, 1) == pytest.approx(z, abs=1e-15)
    assert cross_ratio(0, 1, INF, z) == pytest.approx((z - 1) / z, abs=1e-15)
    assert cross_ratio(INF, 0, 1, z) == pytest.approx(z, abs=1e-15)


@given(
    st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False), min_size=4, max_size=4),
    st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
    st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
)
@settings(max_examples=100)
def test_cross_ratio_mobius_invariant(pts, a, b):
    if min(abs(p - q) for i, p in enumerate(pts) for q in pts[i + 1 :]) < 1e-2 or abs(a) < 1e-2:
        return
    moved = [a * p + b for p in pts]
    moved = [1 / p if abs(p) > 1e-6 else INF for p in moved]
    assert cross_ratio(*moved) == pytest.approx(cross_ratio(*pts), rel=1e-8, abs=1e-9)
