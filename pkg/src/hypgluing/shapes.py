"""Shape parameters of ideal tetrahedra and their volumes.

Points of the sphere at infinity are complex numbers, with ``INF`` standing
for the point at infinity.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

__all__ = [
    "INF",
    "ShapeError",
    "check_shape",
    "cross_ratio",
    "is_inf",
    "lobachevsky",
    "shape_triple",
    "tet_volume",
]

INF = complex(math.inf, 0.0)

# |z| or |z - 1| below this is treated as a degenerate shape.
SHAPE_EPS = 1e-12


class ShapeError(ValueError):
    pass


def is_inf(z) -> bool:
    return cmath.isinf(z)


def check_shape(z: complex) -> complex:
    z = complex(z)
    if not cmath.isfinite(z) or abs(z) < SHAPE_EPS or abs(z - 1) < SHAPE_EPS:
        raise ShapeError(f"degenerate shape parameter {z!r}")
    return z


def shape_triple(z: complex) -> tuple[complex, complex, complex]:
    """The three edge invariants ``(z, 1/(1-z), (z-1)/z)`` of one tetrahedron."""
    z = check_shape(z)
    return z, 1 / (1 - z), (z - 1) / z


def cross_ratio(vi, vj, vk, vl) -> complex:
    """``(vi, vj; vk, vl) = (vi-vk)/(vi-vl) * (vj-vl)/(vj-vk)``.

    A point at infinity cancels the two factors it appears in.
    """
    pts = [complex(v) for v in (vi, vj, vk, vl)]
    for a in range(4):
        for b in range(a + 1, 4):
            pa, pb = pts[a], pts[b]
            if (is_inf(pa) and is_inf(pb)) or (not is_inf(pa) and not is_inf(pb) and pa == pb):
                raise ShapeError("cross-ratio of coincident points")
    vi, vj, vk, vl = pts
    num = [(vi, vk), (vj, vl)]
    den = [(vi, vl), (vj, vk)]
    out = 1 + 0j
    for x, y in num:
        if not (is_inf(x) or is_inf(y)):
            out *= x - y
    for x, y in den:
        if not (is_inf(x) or is_inf(y)):
            out /= x - y
    return out


def _bernoulli_even(count: int) -> list[Fraction]:
    # Akiyama-Tanigawa; returns B_2, B_4, ..., B_{2*count}
    n_max = 2 * count
    a = [Fraction(0)] * (n_max + 1)
    out = []
    for m in range(n_max + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        if m >= 2 and m % 2 == 0:
            out.append(a[0])
    return out


def _series_coefficients(count: int = 40) -> list[float]:
    # Lambda(x) = x - x log(2x) + sum_k c_k x^(2k+1),  c_k = 4^k |B_2k| / (2k (2k+1)!)
    coeffs = []
    for k, b in enumerate(_bernoulli_even(count), start=1):
        coeffs.append(float(Fraction(4**k) * abs(b) / (2 * k * math.factorial(2 * k + 1))))
    return coeffs


_COEFFS = _series_coefficients()


def _lob_small(x: float) -> float:
    """Lobachevsky function for |x| <= pi/4 (convergence ratio <= 1/16)."""
    if x == 0.0:
        return 0.0
    ax = abs(x)
    x2 = ax * ax
    terms = [ax, -ax * math.log(2 * ax)]
    p = ax
    for c in _COEFFS:
        p *= x2
        t = c * p
        terms.append(t)
        if t < 1e-17 * ax:
            break
    val = math.fsum(terms)
    return val if x > 0 else -val


def lobachevsky(theta: float) -> float:
    """``-integral_0^theta log|2 sin t| dt``, odd and pi-periodic.

    After reduction to ``[-pi/2, pi/2]`` the duplication formula
    ``L(s + pi/2) = L(2s)/2 - L(s)`` pulls the argument into ``[-pi/4, pi/4]``,
    where the Bernoulli expansion of the Fourier series ``sum sin(2n x)/(2 n^2)``
    converges geometrically.
    """
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError("lobachevsky of a non-finite angle")
    r = math.fmod(theta, math.pi)
    if r > math.pi / 2:
        r -= math.pi
    elif r < -math.pi / 2:
        r += math.pi
    sign = 1.0 if r >= 0 else -1.0
    r = abs(r)
    if r <= math.pi / 4:
        return sign * _lob_small(r)
    s = r - math.pi / 2
    return sign * (0.5 * _lob_small(2 * s) - _lob_small(s))


def tet_volume(z: complex) -> float:
    """Signed volume of the ideal tetrahedron with shape ``z``."""
    return math.fsum(lobachevsky(cmath.phase(w)) for w in shape_triple(z))
