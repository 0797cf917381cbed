import functools

import numpy as np
import pytest

from hypgluing.equations import gluing_system
from hypgluing.fixtures import NAMES, load_fixture
from hypgluing.hypgeom import boost
from hypgluing.solver import SolverOptions, solve_all
from hypgluing.triangulation import barycentric_subdivide


@functools.lru_cache(maxsize=None)
def fixture(name: str):
    return load_fixture(name)


@functools.lru_cache(maxsize=None)
def subdivided(name: str):
    return barycentric_subdivide(fixture(name))


@functools.lru_cache(maxsize=None)
def system(name: str):
    return gluing_system(fixture(name))


@functools.lru_cache(maxsize=None)
def solutions(name: str, seed: int = 0, restarts: int = 512):
    return tuple(solve_all(system(name), SolverOptions(seed=seed, restarts=restarts)))


def random_rotation(rng) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    g = np.eye(4)
    g[:3, :3] = q
    return g


def random_lorentz(rng, max_rapidity: float = 2.0) -> np.ndarray:
    """Rotation, boost along x, rotation: a generic element of SO+(3,1)."""
    b = boost(rng.uniform(-max_rapidity, max_rapidity), axis=0)
    return random_rotation(rng) @ b @ random_rotation(rng)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=NAMES)
def fixture_name(request):
    return request.param
