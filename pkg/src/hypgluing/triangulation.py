"""Semi-simplicial triangulations of closed oriented 3-manifolds.

A triangulation is a list of tetrahedra with face pairings. Face ``f`` of a
tetrahedron is the triangle opposite vertex ``f``, and a gluing record
``(t, perm)`` says that vertex ``a`` of the source tetrahedron is identified
with vertex ``perm[a]`` of tetrahedron ``t``. This is the same convention as
Regina's ``adjacentGluing``.

Everything the gluing equations need is derived here: edge classes with their
cyclic corner lists, vertex classes, the normal quadrilaterals of each
tetrahedron and the integer matrix ``i(q, e)``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

__all__ = [
    "EDGE_SLOTS",
    "QUAD_EDGE_PAIRS",
    "EdgeClass",
    "QuadClass",
    "Triangulation",
    "TriangulationError",
    "ValidationReport",
    "barycentric_subdivide",
    "edge_classes",
    "gluing_matrix",
    "load_triangulation",
    "parse_triangulation",
    "perm_is_even",
    "quad_classes_and_tau",
    "quad_of_edge",
    "relabel",
    "tau_for_orientation",
    "validate",
]

# Edge slots of the standard tetrahedron, in the fixed order 01,02,03,12,13,23.
EDGE_SLOTS: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
_SLOT_INDEX = {pair: i for i, pair in enumerate(EDGE_SLOTS)}

# Quad q faces the opposite edge pair QUAD_EDGE_PAIRS[q]: q=0 <-> 01|23,
# q=1 <-> 02|13, q=2 <-> 03|12.
QUAD_EDGE_PAIRS: tuple[tuple[int, int], ...] = ((0, 5), (1, 4), (2, 3))


class TriangulationError(ValueError):
    """Malformed or inconsistent triangulation data."""


def _slot(a: int, b: int) -> int:
    return _SLOT_INDEX[(a, b) if a < b else (b, a)]


def quad_of_edge(a: int, b: int) -> int:
    """Index of the normal quadrilateral facing the edge ``ab``."""
    s = _slot(a, b)
    return min(s, 5 - s)


def perm_is_even(perm) -> bool:
    inversions = sum(1 for i, j in itertools.combinations(range(4), 2) if perm[i] > perm[j])
    return inversions % 2 == 0


def _invert(perm) -> tuple[int, ...]:
    inv = [0] * 4
    for a, b in enumerate(perm):
        inv[b] = a
    return tuple(inv)


def tau_for_orientation(sign: int = 1) -> tuple[int, int, int]:
    """The 3-cycle on quads as an image tuple: ``tau[q]`` follows ``q``.

    For a positively oriented tetrahedron the quad facing 01 is followed by the
    quad facing 02 and then the one facing 03, so that with ``z`` on q=0 the
    other two quads carry ``1/(1-z)`` and ``(z-1)/z``. Reversing the
    orientation inverts the cycle.
    """
    if sign > 0:
        return (1, 2, 0)
    return (2, 0, 1)


@dataclass(frozen=True)
class EdgeClass:
    index: int
    corners: tuple[tuple[int, int, int], ...]
    """Cyclically ordered ``(tet, slot, direction)``; direction is +1 when the
    walk traverses the slot from its lower to its higher vertex."""
    endpoints: tuple[int, int]
    crossings: tuple[tuple[int, int], ...] = ()
    """``(tet, face)`` left through after each corner, in walk order."""

    @property
    def valence(self) -> int:
        return len(self.corners)

    @property
    def is_loop(self) -> bool:
        return self.endpoints[0] == self.endpoints[1]


@dataclass(frozen=True)
class QuadClass:
    tet: int
    q: int

    @property
    def faced_slots(self) -> tuple[int, int]:
        return QUAD_EDGE_PAIRS[self.q]

    @property
    def column(self) -> int:
        return 3 * self.tet + self.q


@dataclass(frozen=True)
class Triangulation:
    tet_count: int
    gluings: tuple[tuple[tuple[int, tuple[int, int, int, int]] | None, ...], ...]

    def __post_init__(self):
        if len(self.gluings) != self.tet_count:
            raise TriangulationError("gluing list length does not match tet count")

    def glued(self, tet: int, face: int):
        return self.gluings[tet][face]

    def to_dict(self) -> dict:
        rows = []
        for faces in self.gluings:
            rows.append([None if g is None else {"tet": g[0], "perm": list(g[1])} for g in faces])
        return {"tets": self.tet_count, "gluings": rows}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @cached_property
    def is_closed(self) -> bool:
        for t, faces in enumerate(self.gluings):
            for f, g in enumerate(faces):
                if g is None:
                    return False
                t2, p = g
                back = self.gluings[t2][p[f]]
                if back is None or back[0] != t or tuple(back[1]) != _invert(p):
                    return False
        return True

    @cached_property
    def is_oriented(self) -> bool:
        return all(g is None or not perm_is_even(g[1]) for faces in self.gluings for g in faces)

    @cached_property
    def vertex_classes(self) -> dict[tuple[int, int], int]:
        """Map ``(tet, vertex)`` to a vertex class id (union-find)."""
        parent = {(t, v): (t, v) for t in range(self.tet_count) for v in range(4)}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for t, faces in enumerate(self.gluings):
            for f, g in enumerate(faces):
                if g is None:
                    continue
                t2, p = g
                for a in range(4):
                    if a != f:
                        ra, rb = find((t, a)), find((t2, p[a]))
                        if ra != rb:
                            parent[max(ra, rb)] = min(ra, rb)
        roots: dict = {}
        out = {}
        for key in sorted(parent):
            r = find(key)
            out[key] = roots.setdefault(r, len(roots))
        return out

    @property
    def vertex_count(self) -> int:
        return len(set(self.vertex_classes.values()))

    @cached_property
    def edges(self) -> tuple[EdgeClass, ...]:
        return tuple(_edge_classes(self))

    @cached_property
    def edge_of_slot(self) -> dict[tuple[int, int], int]:
        out = {}
        for e in self.edges:
            for t, s, _ in e.corners:
                out[(t, s)] = e.index
        return out

    @cached_property
    def is_connected(self) -> bool:
        if self.tet_count == 0:
            return True
        seen = {0}
        todo = [0]
        while todo:
            t = todo.pop()
            for g in self.gluings[t]:
                if g is not None and g[0] not in seen:
                    seen.add(g[0])
                    todo.append(g[0])
        return len(seen) == self.tet_count


def _as_perm(entry, where: str) -> tuple[int, int, int, int]:
    if not isinstance(entry, (list, tuple)) or len(entry) != 4:
        raise TriangulationError(f"{where}: perm must be a list of 4 integers")
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in entry):
        raise TriangulationError(f"{where}: perm entries must be integers")
    if sorted(entry) != [0, 1, 2, 3]:
        raise TriangulationError(f"{where}: perm {list(entry)} is not a bijection of 0..3")
    return tuple(entry)


def parse_triangulation(text: str) -> Triangulation:
    """Parse the JSON triangulation format.

    Only structural checks are made here; closedness and orientation are left
    to :func:`validate`.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TriangulationError(f"malformed document: {exc}") from None
    if not isinstance(doc, dict) or "tets" not in doc or "gluings" not in doc:
        raise TriangulationError("malformed document: expected keys 'tets' and 'gluings'")
    n = doc["tets"]
    rows = doc["gluings"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise TriangulationError("malformed document: 'tets' must be a nonnegative integer")
    if not isinstance(rows, list) or len(rows) != n:
        raise TriangulationError("malformed document: need one gluing row per tetrahedron")
    gluings = []
    targets: set[tuple[int, int]] = set()
    for t, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != 4:
            raise TriangulationError(f"tet {t}: need exactly 4 face records")
        faces = []
        for f, rec in enumerate(row):
            if rec is None:
                faces.append(None)
                continue
            if not isinstance(rec, dict) or "tet" not in rec or "perm" not in rec:
                raise TriangulationError(f"tet {t} face {f}: record needs 'tet' and 'perm'")
            t2 = rec["tet"]
            if not isinstance(t2, int) or isinstance(t2, bool) or not 0 <= t2 < n:
                raise TriangulationError(f"tet {t} face {f}: target tet {t2!r} out of range")
            p = _as_perm(rec["perm"], f"tet {t} face {f}")
            target = (t2, p[f])
            if target == (t, f):
                raise TriangulationError(f"tet {t} face {f} is glued to itself")
            if target in targets:
                raise TriangulationError(f"face multiply glued: tet {t2} face {p[f]}")
            targets.add(target)
            faces.append((t2, p))
        gluings.append(tuple(faces))
    return Triangulation(n, tuple(gluings))


def load_triangulation(path) -> Triangulation:
    with open(path, encoding="utf-8") as fh:
        return parse_triangulation(fh.read())


def _edge_classes(T: Triangulation) -> list[EdgeClass]:
    if not T.is_closed:
        raise TriangulationError("edge classes need a closed triangulation")
    vc = T.vertex_classes
    seen: set[tuple[int, int]] = set()
    out = []
    for t0 in range(T.tet_count):
        for s0, (a0, b0) in enumerate(EDGE_SLOTS):
            if (t0, s0) in seen:
                continue
            c0, d0 = (x for x in range(4) if x not in (a0, b0))
            # state: edge ab of tet t, leave through the face opposite d
            t, a, b, c, d = t0, a0, b0, c0, d0
            corners = []
            crossings = []
            while True:
                s = _slot(a, b)
                if (t, s) in seen:
                    raise TriangulationError(f"inconsistent edge cycle at tet {t} slot {EDGE_SLOTS[s]}")
                seen.add((t, s))
                corners.append((t, s, 1 if a < b else -1))
                crossings.append((t, d))
                t, p = T.gluings[t][d]
                a, b, c, d = p[a], p[b], p[d], p[c]
                if (t, a, b, c, d) == (t0, a0, b0, c0, d0):
                    break
                if t == t0 and _slot(a, b) == s0:
                    raise TriangulationError(f"edge cycle at tet {t0} slot {EDGE_SLOTS[s0]} closes inconsistently")
            ends = (vc[(t0, a0)], vc[(t0, b0)])
            out.append(EdgeClass(len(out), tuple(corners), ends, tuple(crossings)))
    return out


def edge_classes(T: Triangulation) -> list[EdgeClass]:
    """Edge classes of a closed triangulation with cyclically ordered corners."""
    return list(T.edges)


def quad_classes_and_tau(T: Triangulation):
    """All ``3 * tet_count`` quads and, per tetrahedron, the 3-cycle on them.

    Every tetrahedron of an oriented triangulation is positively oriented with
    respect to its vertex labelling, so each gets the same cycle.
    """
    if not T.is_oriented:
        raise TriangulationError("triangulation is not oriented")
    quads = [QuadClass(t, q) for t in range(T.tet_count) for q in range(3)]
    taus = [tau_for_orientation(1) for _ in range(T.tet_count)]
    return quads, taus


def gluing_matrix(T: Triangulation) -> np.ndarray:
    """Integer matrix with ``M[e, 3*t + q] = i(q, e)``."""
    M = np.zeros((len(T.edges), 3 * T.tet_count), dtype=np.int64)
    for e in T.edges:
        for t, s, _ in e.corners:
            M[e.index, 3 * t + min(s, 5 - s)] += 1
    return M


@dataclass
class ValidationReport:
    closed: bool
    oriented: bool
    connected: bool
    tet_count: int
    edge_count: int | None = None
    vertex_count: int | None = None
    links: list[int] = field(default_factory=list)
    loop_edges: list[int] = field(default_factory=list)

    @property
    def links_are_spheres(self) -> bool:
        return bool(self.links) and all(x == 2 for x in self.links) or (self.closed and self.tet_count == 0)

    @property
    def ok(self) -> bool:
        return self.closed and self.oriented and self.links_are_spheres

    def to_dict(self) -> dict:
        return {
            "closed": self.closed,
            "oriented": self.oriented,
            "counts": {
                "tets": self.tet_count,
                "edges": self.edge_count,
                "vertices": self.vertex_count,
            },
            "links": self.links,
            "links_are_spheres": self.links_are_spheres,
            "loop_edges": self.loop_edges,
        }


def validate(T: Triangulation) -> ValidationReport:
    report = ValidationReport(
        closed=T.is_closed, oriented=T.is_oriented, connected=T.is_connected, tet_count=T.tet_count
    )
    if not report.closed:
        return report
    vc = T.vertex_classes
    nv = T.vertex_count
    report.edge_count = len(T.edges)
    report.vertex_count = nv
    # chi(link of v) = (#edge ends at v) - (#tet corners at v) / 2
    ends = [0] * nv
    for e in T.edges:
        ends[e.endpoints[0]] += 1
        ends[e.endpoints[1]] += 1
    corners = [0] * nv
    for key, v in vc.items():
        corners[v] += 1
    report.links = [ends[v] - corners[v] // 2 if corners[v] % 2 == 0 else None for v in range(nv)]
    report.loop_edges = [e.index for e in T.edges if e.is_loop]
    return report


def barycentric_subdivide(T: Triangulation) -> Triangulation:
    """First barycentric subdivision, relabelled to stay coherently oriented.

    Sub-tetrahedron ``(t, pi)`` has vertices: original vertex ``pi[0]``, the
    midpoint of edge ``pi[0]pi[1]``, the centre of face ``pi[0]pi[1]pi[2]`` and
    the centre of ``t``.
    """
    if not (T.is_closed and T.is_oriented):
        raise TriangulationError("subdivision needs a closed oriented triangulation")
    perms = list(itertools.permutations(range(4)))
    index = {(t, p): 24 * t + k for t in range(T.tet_count) for k, p in enumerate(perms)}
    # odd flags get vertices 0 and 1 swapped so every sub-tet is positive
    swap = (1, 0, 2, 3)
    ident = (0, 1, 2, 3)

    def relabel(pi):
        return ident if perm_is_even(pi) else swap

    gluings = []
    for t in range(T.tet_count):
        for pi in perms:
            lam = relabel(pi)
            faces = [None] * 4
            for i in range(4):
                if i < 3:
                    other = list(pi)
                    other[i], other[i + 1] = other[i + 1], other[i]
                    t2, pi2 = t, tuple(other)
                else:
                    t_adj, p = T.gluings[t][pi[3]]
                    t2, pi2 = t_adj, tuple(p[x] for x in pi)
                lam2 = relabel(pi2)
                # new label of self -> old label -> same old label on the other side -> new
                perm = tuple(lam2[lam[k]] for k in range(4))
                faces[lam[i]] = (index[(t2, pi2)], perm)
            gluings.append(tuple(faces))
    return Triangulation(24 * T.tet_count, tuple(gluings))


def relabel(T: Triangulation, tet: int, sigma) -> Triangulation:
    """Rename the vertices of one tetrahedron: old vertex ``a`` becomes ``sigma[a]``.

    An odd ``sigma`` reverses that tetrahedron's orientation.
    """
    sigma = tuple(sigma)
    inv = _invert(sigma)
    rows = [list(faces) for faces in T.gluings]
    # incoming records first, then the tet's own row
    for t, faces in enumerate(T.gluings):
        for f, g in enumerate(faces):
            if g is not None and g[0] == tet:
                rows[t][f] = (tet, tuple(sigma[g[1][a]] for a in range(4)))
    own = rows[tet]
    new_own = [None] * 4
    for f in range(4):
        g = own[f]
        if g is not None:
            t2, p = g
            # p may already have been composed with sigma on its target side
            new_own[sigma[f]] = (t2, tuple(p[inv[a]] for a in range(4)))
    rows[tet] = new_own
    return Triangulation(T.tet_count, tuple(tuple(r) for r in rows))
