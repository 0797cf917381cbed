"""Bundled triangulation fixtures.

``lens_4_1``, ``lens_5_2``, ``three_sphere``, ``poincare`` and ``weeks`` were
exported from Regina's example triangulations (``weeks`` is the 9-tetrahedron
census triangulation of the Weeks manifold, H_1 = Z/5 + Z/5). The L(4,1) file
has its vertex labels evenly permuted so that the shape -1 sits on quad 0.
"""

from __future__ import annotations

from importlib import resources

from .triangulation import Triangulation, parse_triangulation

NAMES = ("lens_4_1", "lens_5_2", "three_sphere", "poincare", "weeks")

# First homology (free rank, torsion) as reported by Regina.
HOMOLOGY = {
    "lens_4_1": (0, (4,)),
    "lens_5_2": (0, (5,)),
    "three_sphere": (0, ()),
    "poincare": (0, ()),
    "weeks": (0, (5, 5)),
}


def fixture_text(name: str) -> str:
    if name not in NAMES:
        raise KeyError(f"no bundled fixture {name!r}; choose from {', '.join(NAMES)}")
    return resources.files("hypgluing.data").joinpath(f"{name}.json").read_text(encoding="utf-8")


def load_fixture(name: str) -> Triangulation:
    return parse_triangulation(fixture_text(name))
