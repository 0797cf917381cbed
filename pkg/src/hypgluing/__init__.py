"""Numerical hyperbolic gluing equations on closed oriented triangulations."""

from .equations import GluingSystem, angle_report, block_system, gluing_system, jacobian, residual
from .fixtures import load_fixture
from .holonomy import characters, develop, generator_maps, presentation, verify_relators
from .shapes import cross_ratio, lobachevsky, shape_triple, tet_volume
from .solver import SolutionRecord, SolverOptions, max_volume, newton_refine, solve_all
from .triangulation import Triangulation, barycentric_subdivide, load_triangulation, parse_triangulation, validate

__all__ = [
    "GluingSystem",
    "SolutionRecord",
    "SolverOptions",
    "Triangulation",
    "angle_report",
    "barycentric_subdivide",
    "block_system",
    "characters",
    "cross_ratio",
    "develop",
    "generator_maps",
    "gluing_system",
    "jacobian",
    "load_fixture",
    "load_triangulation",
    "lobachevsky",
    "max_volume",
    "newton_refine",
    "parse_triangulation",
    "presentation",
    "residual",
    "shape_triple",
    "solve_all",
    "tet_volume",
    "validate",
    "verify_relators",
]
