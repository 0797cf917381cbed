"""Developing map on a fundamental domain and the holonomy into PSL(2,C).

The fundamental domain is the union of all tetrahedra glued along the faces of
a spanning tree of the dual graph. Every other face pairing is a generator of
the fundamental group and every edge cycle gives a relator. Points of the
sphere at infinity are complex numbers with ``shapes.INF`` for infinity, and
Möbius maps are 2x2 complex arrays normalised to determinant 1.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

import numpy as np

from .equations import expand
from .shapes import INF, ShapeError, cross_ratio, is_inf
from .triangulation import Triangulation, TriangulationError, quad_of_edge

__all__ = [
    "DevelopmentError",
    "Development",
    "Presentation",
    "abelian_invariants",
    "characters",
    "conjugate_maps",
    "develop",
    "evaluate_word",
    "generator_maps",
    "mobius_apply",
    "normalize",
    "presentation",
    "relator_deviations",
    "three_point_map",
    "verify_relators",
]

# Coincidence threshold for developed points of one tetrahedron.
COINCIDENCE_TOL = 1e-9


class DevelopmentError(ValueError):
    """The development or a face-pairing map degenerated."""


# --- Möbius maps ----------------------------------------------------------------


def normalize(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(det) < 1e-300:
        raise DevelopmentError("singular Möbius matrix")
    return m / np.sqrt(det)


def mobius_apply(m, z) -> complex:
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    if is_inf(z):
        return INF if c == 0 else complex(a / c)
    den = c * z + d
    if den == 0:
        return INF
    return complex((a * z + b) / den)


def _normalizer(p, q, r) -> np.ndarray:
    """Matrix sending ``p, q, r`` to ``0, 1, inf``."""
    if is_inf(p):
        m = [[0, q - r], [1, -r]]
    elif is_inf(q):
        m = [[1, -p], [1, -r]]
    elif is_inf(r):
        m = [[1, -p], [0, q - p]]
    else:
        m = [[q - r, -p * (q - r)], [q - p, -r * (q - p)]]
    return np.array(m, dtype=complex)


def _distinct(points) -> bool:
    for x, y in itertools.combinations(points, 2):
        if is_inf(x) and is_inf(y):
            return False
        if not is_inf(x) and not is_inf(y) and abs(x - y) <= COINCIDENCE_TOL * max(1.0, abs(x), abs(y)):
            return False
    return True


def three_point_map(src, dst) -> np.ndarray:
    """The Möbius map taking the three points ``src`` to ``dst``, determinant 1."""
    if not (_distinct(src) and _distinct(dst)):
        raise DevelopmentError("three-point map through coincident points")
    A = _normalizer(*src)
    B = _normalizer(*dst)
    Binv = np.array([[B[1, 1], -B[0, 1]], [-B[1, 0], B[0, 0]]])
    return normalize(Binv @ A)


# --- presentation -------------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    """Generators are non-tree face pairs, keyed by their smaller ``(tet, face)``."""

    generators: tuple[tuple[int, int], ...]
    relators: tuple[tuple[int, ...], ...]
    """Words as signed 1-based generator indices (``-k`` is the inverse of ``k``)."""
    tree: frozenset
    """Dual spanning tree: set of canonical ``(tet, face)`` pairs."""
    pairs: dict

    def letter(self, tet: int, face: int) -> int:
        """Signed generator index for leaving ``tet`` through ``face`` (0 on tree faces)."""
        key = self.pairs[(tet, face)]
        if key in self.tree:
            return 0
        g = self.generators.index(key) + 1
        return g if key == (tet, face) else -g


def _pair_keys(T: Triangulation) -> dict:
    out = {}
    for t, faces in enumerate(T.gluings):
        for f, (t2, p) in enumerate(faces):
            out[(t, f)] = min((t, f), (t2, p[f]))
    return out


def _spanning_tree(T: Triangulation, pairs: dict) -> frozenset:
    seen = {0}
    tree = set()
    queue = deque([0])
    while queue:
        t = queue.popleft()
        for f in range(4):
            t2, _ = T.gluings[t][f]
            if t2 not in seen:
                seen.add(t2)
                tree.add(pairs[(t, f)])
                queue.append(t2)
    return frozenset(tree)


def presentation(T: Triangulation) -> Presentation:
    """Dual spanning-tree presentation of the fundamental group.

    The tree is grown breadth-first from tet 0 with faces in index order. Each
    edge class contributes the word of face pairings met walking around it.
    """
    if not (T.is_closed and T.is_oriented):
        raise TriangulationError("presentation needs a closed oriented triangulation")
    if T.tet_count == 0 or not T.is_connected:
        raise TriangulationError("presentation needs a connected nonempty triangulation")
    pairs = _pair_keys(T)
    tree = _spanning_tree(T, pairs)
    gens = tuple(sorted(set(pairs.values()) - tree))
    pres = Presentation(gens, (), tree, pairs)
    relators = []
    for e in T.edges:
        word = tuple(x for x in (pres.letter(t, f) for t, f in e.crossings) if x != 0)
        relators.append(word)
    return Presentation(gens, tuple(relators), tree, pairs)


def abelian_invariants(pres: Presentation) -> tuple[int, tuple[int, ...]]:
    """``(free rank, torsion coefficients)`` of the abelianised presentation."""
    from sympy import Matrix
    from sympy.matrices.normalforms import invariant_factors

    n = len(pres.generators)
    if n == 0:
        return 0, ()
    rows = []
    for word in pres.relators:
        row = [0] * n
        for x in word:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    if not rows:
        return n, ()
    factors = [abs(int(d)) for d in invariant_factors(Matrix(rows))]
    nonzero = [d for d in factors if d != 0]
    return n - len(nonzero), tuple(sorted(d for d in nonzero if d > 1))


# --- development ----------------------------------------------------------------


@dataclass(frozen=True)
class Development:
    base: int
    positions: tuple[tuple[complex, complex, complex, complex], ...]
    """Images of the four vertices of each tetrahedron of the fundamental domain."""
    shapes: np.ndarray
    """Expanded quad values, three per tetrahedron."""

    def edge_invariant(self, tet: int, a: int, b: int) -> complex:
        return complex(self.shapes[3 * tet + quad_of_edge(a, b)])

    def max_cross_ratio_error(self) -> float:
        worst = 0.0
        for t, P in enumerate(self.positions):
            for i, j, k, l in _EVEN_PERMS:
                cr = cross_ratio(P[i], P[j], P[k], P[l])
                zq = self.edge_invariant(t, i, j)
                worst = max(worst, abs(cr - zq) / max(1.0, abs(zq)))
        return worst


_EVEN_PERMS = [p for p in itertools.permutations(range(4)) if sum(p[i] > p[j] for i, j in itertools.combinations(range(4), 2)) % 2 == 0]


def _fourth_point(known: dict, missing: int, tet_shapes) -> complex:
    """Place vertex ``missing`` so that ``(v_i, v_j; v_k, v_l)`` equals the edge invariant at ``ij``."""
    i, j, k, l = next(p for p in _EVEN_PERMS if p[3] == missing)
    z = tet_shapes[quad_of_edge(i, j)]
    # N sends v_k, v_j, v_i to 0, 1, inf; there the cross-ratio is 1 - N(v_l)
    N = _normalizer(known[k], known[j], known[i])
    Ninv = np.array([[N[1, 1], -N[0, 1]], [-N[1, 0], N[0, 0]]])
    return mobius_apply(Ninv, 1 - z)


def _check_tet(t: int, P) -> None:
    if not _distinct(P):
        raise DevelopmentError(f"tetrahedron {t} develops onto coincident vertices")


def develop(T: Triangulation, z, base: int = 0, pres: Presentation | None = None) -> Development:
    """Develop the fundamental domain starting from tetrahedron ``base``.

    The base tetrahedron goes to ``(0, 1, inf, w)``; every other tetrahedron
    is reached through tree faces and gets its fourth vertex from the edge
    invariant of one of its edges.
    """
    pres = pres or presentation(T)
    shapes = expand(z)
    if shapes.size != 3 * T.tet_count:
        raise ValueError("one shape per tetrahedron expected")
    positions: list = [None] * T.tet_count
    P = {0: 0j, 1: 1 + 0j, 2: INF}
    P[3] = _fourth_point(P, 3, shapes[3 * base : 3 * base + 3])
    positions[base] = tuple(P[a] for a in range(4))
    _check_tet(base, positions[base])
    queue = deque([base])
    while queue:
        t = queue.popleft()
        for f in range(4):
            if pres.pairs[(t, f)] not in pres.tree:
                continue
            t2, p = T.gluings[t][f]
            if positions[t2] is not None:
                continue
            known = {p[a]: positions[t][a] for a in range(4) if a != f}
            missing = p[f]
            known[missing] = _fourth_point(known, missing, shapes[3 * t2 : 3 * t2 + 3])
            positions[t2] = tuple(known[a] for a in range(4))
            _check_tet(t2, positions[t2])
            queue.append(t2)
    return Development(base, tuple(positions), shapes)


def generator_maps(T: Triangulation, dev: Development, pres: Presentation | None = None) -> list[np.ndarray]:
    """One Möbius map per generator.

    For the pair leaving tet ``t`` through face ``f`` into ``t2`` the map sends
    the developed face of ``t2`` onto the developed face of ``t``.
    """
    pres = pres or presentation(T)
    out = []
    for t, f in pres.generators:
        t2, p = T.gluings[t][f]
        face = [a for a in range(4) if a != f]
        src = [dev.positions[t2][p[a]] for a in face]
        dst = [dev.positions[t][a] for a in face]
        out.append(three_point_map(src, dst))
    return out


def evaluate_word(word, gens) -> np.ndarray:
    m = np.eye(2, dtype=complex)
    for x in word:
        g = gens[abs(x) - 1]
        if x < 0:
            g = np.array([[g[1, 1], -g[0, 1]], [-g[1, 0], g[0, 0]]])
        m = m @ g
    return m


def relator_deviations(pres: Presentation, gens) -> list[float]:
    eye = np.eye(2)
    out = []
    for word in pres.relators:
        m = evaluate_word(word, gens)
        out.append(float(min(np.linalg.norm(m - eye), np.linalg.norm(m + eye))))
    return out


def verify_relators(pres: Presentation, gens) -> float:
    """Largest distance of a relator image from ``+-I`` (Frobenius norm)."""
    return max(relator_deviations(pres, gens), default=0.0)


def _canonical_sign(tr: complex, tol: float = 1e-12) -> complex:
    if tr.real < -tol or (abs(tr.real) <= tol and tr.imag < 0):
        return -tr
    return tr


def characters(gens) -> list[complex]:
    """Traces of the generators, then of ``g_i g_j`` for ``i < j``, with a canonical sign."""
    traces = [complex(np.trace(g)) for g in gens]
    for i, j in itertools.combinations(range(len(gens)), 2):
        traces.append(complex(np.trace(gens[i] @ gens[j])))
    return [_canonical_sign(t) for t in traces]


def conjugate_maps(gens, h) -> list[np.ndarray]:
    h = normalize(h)
    hinv = np.array([[h[1, 1], -h[0, 1]], [-h[1, 0], h[0, 0]]])
    return [h @ g @ hinv for g in gens]
