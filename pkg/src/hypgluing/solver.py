"""Multi-start damped Gauss-Newton search for solutions of the gluing equations.

Random starts are not a decomposition of the solution set into components; a
search can miss solutions, and an empty result is a numerical verdict only.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .equations import (
    FLAT_TOL,
    GluingSystem,
    angle_report,
    classify,
    jacobian,
    residual,
)
from .shapes import ShapeError, tet_volume

__all__ = [
    "NewtonFailure",
    "SolutionRecord",
    "SolverOptions",
    "max_volume",
    "newton_refine",
    "random_starts",
    "realify",
    "solve_all",
    "tangent_volume_derivative",
    "volume",
]

COMPLETENESS_CAVEAT = (
    "multi-start Newton search: solution components may be missed; "
    "an empty result does not prove the parameter space is empty"
)


@dataclass(frozen=True)
class SolverOptions:
    seed: int = 0
    restarts: int = 512
    newton_max_iters: int = 100
    damping: float = 0.5
    max_halvings: int = 30
    residual_tol: float = 1e-11
    dedup_tol: float = 1e-8
    rank_tol: float = 1e-8
    # accepted solutions keep |z| and |1 - z| above this; the product form of
    # the equations cancels (1 - z) factors, so Newton can creep towards z = 1
    degenerate_tol: float = 1e-6
    threads: int = 1

    def __post_init__(self):
        for name in ("residual_tol", "dedup_tol", "rank_tol", "degenerate_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.restarts < 0 or self.newton_max_iters < 1 or self.threads < 1:
            raise ValueError("restarts, newton_max_iters and threads out of range")
        if not 0 < self.damping < 1:
            raise ValueError("damping factor must lie in (0, 1)")
        if self.dedup_tol <= self.residual_tol:
            raise ValueError("dedup_tol must exceed residual_tol")


@dataclass(eq=False)
class SolutionRecord:
    z: np.ndarray
    max_residual: float
    volume: float
    census: dict[str, int]
    corank: int
    iterations: int = 0

    def to_dict(self) -> dict:
        return {
            "shapes": [{"re": float(w.real), "im": float(w.imag)} for w in self.z],
            "residual": float(self.max_residual),
            "volume": float(self.volume),
            "census": dict(self.census),
            "corank": int(self.corank),
        }


@dataclass
class NewtonFailure:
    reason: str
    last_residual: float
    iterations: int
    z: np.ndarray = field(repr=False, default=None)

    def __bool__(self):
        return False


def volume(z) -> float:
    return math.fsum(tet_volume(w) for w in np.asarray(z).reshape(-1))


def realify(J: np.ndarray) -> np.ndarray:
    """Real ``2E x 2T`` matrix of a holomorphic Jacobian acting on ``(Re dz, Im dz)``."""
    A, B = J.real, J.imag
    return np.block([[A, -B], [B, A]])


def corank(S: GluingSystem, z, rank_tol: float) -> int:
    if S.tet_count == 0:
        return 0
    sv = np.linalg.svd(realify(jacobian(S, z)), compute_uv=False)
    top = sv[0] if sv.size else 0.0
    rank = int(np.sum(sv > rank_tol * max(top, 1.0)))
    return 2 * S.tet_count - rank


def _max_res(S: GluingSystem, z) -> float:
    r = residual(S, z)
    return float(np.max(np.abs(r))) if r.size else 0.0


def _safe_res(S: GluingSystem, z):
    try:
        r = residual(S, z)
    except ShapeError:
        return None
    if not np.all(np.isfinite(r)):
        return None
    return r


def _snap_flat(S: GluingSystem, z: np.ndarray, tol: float, rcond: float) -> np.ndarray:
    # round imaginary parts that are pure noise, if the residual allows it
    small = np.abs(z.imag) <= FLAT_TOL
    if not small.any():
        return z
    snapped = z.copy()
    snapped[small] = snapped[small].real
    r = _safe_res(S, snapped)
    if r is not None and float(np.max(np.abs(r))) < tol:
        # Newton steps from a real point are real, so flat solutions stay flat
        return _polish(S, snapped, r, rcond)
    return z


def _polish(S: GluingSystem, z: np.ndarray, r: np.ndarray, rcond: float, steps: int = 3) -> np.ndarray:
    # a converged iterate is within the quadratic basin; extra full steps push
    # the residual down to roundoff, and are kept only if they help. Singular
    # values below rcond belong to the solution family and are cut off, else
    # the step shoots along it.
    best = float(np.max(np.abs(r)))
    for _ in range(steps):
        trial = z + np.linalg.lstsq(jacobian(S, z, r + 1), -r, rcond=rcond)[0]
        rt = _safe_res(S, trial)
        if rt is None or float(np.max(np.abs(rt))) >= best:
            break
        z, r, best = trial, rt, float(np.max(np.abs(rt)))
    return z


def _record(S: GluingSystem, z: np.ndarray, opts: SolverOptions, iterations: int) -> SolutionRecord:
    classes = [classify(w) for w in z]
    census = {k: classes.count(k) for k in ("positive", "flat", "negative")}
    return SolutionRecord(
        z=z,
        max_residual=_max_res(S, z),
        volume=volume(z),
        census=census,
        corank=corank(S, z, opts.rank_tol),
        iterations=iterations,
    )


def newton_refine(S: GluingSystem, z0, opts: SolverOptions | None = None):
    """Damped Gauss-Newton on the full (overdetermined) edge system.

    Returns a :class:`SolutionRecord`, or a falsy :class:`NewtonFailure` whose
    ``reason`` is ``"degenerate"`` or ``"no convergence"``.
    """
    opts = opts or SolverOptions()
    z = np.array(z0, dtype=complex).reshape(-1)
    r = _safe_res(S, z)
    if r is None:
        return NewtonFailure("degenerate", math.inf, 0, z)
    norm = float(np.linalg.norm(r))
    for it in range(opts.newton_max_iters + 1):
        if float(np.max(np.abs(r), initial=0.0)) < opts.residual_tol:
            if np.any(np.abs(z) < opts.degenerate_tol) or np.any(np.abs(1 - z) < opts.degenerate_tol):
                return NewtonFailure("degenerate", float(np.max(np.abs(r))), it, z)
            z = _polish(S, z, r, opts.rank_tol)
            z = _snap_flat(S, z, opts.residual_tol, opts.rank_tol)
            return _record(S, z, opts, it)
        if it == opts.newton_max_iters:
            break
        J = jacobian(S, z, r + 1)
        step = np.linalg.lstsq(J, -r, rcond=None)[0]
        lam = 1.0
        for _ in range(opts.max_halvings + 1):
            trial = z + lam * step
            rt = _safe_res(S, trial)
            if rt is not None:
                nt = float(np.linalg.norm(rt))
                if nt < norm:
                    break
            lam *= opts.damping
        else:
            if rt is None:
                return NewtonFailure("degenerate", float(np.max(np.abs(r))), it, z)
            return NewtonFailure("no convergence", float(np.max(np.abs(r))), it, z)
        z, r, norm = trial, rt, nt
    return NewtonFailure("no convergence", float(np.max(np.abs(r))), opts.newton_max_iters, z)


def random_starts(tet_count: int, opts: SolverOptions) -> np.ndarray:
    """``restarts x tet_count`` points in [-2,3] x [-2.5,2.5] avoiding disks of radius 0.05 at 0 and 1."""
    rng = np.random.default_rng(opts.seed)
    out = np.empty((opts.restarts, tet_count), dtype=complex)
    for i in range(opts.restarts):
        for t in range(tet_count):
            while True:
                w = complex(rng.uniform(-2.0, 3.0), rng.uniform(-2.5, 2.5))
                if abs(w) > 0.05 and abs(w - 1) > 0.05:
                    break
            out[i, t] = w
    return out


def _dedup(records: list[SolutionRecord], tol: float) -> list[SolutionRecord]:
    kept: list[SolutionRecord] = []
    for rec in records:
        if not any(np.max(np.abs(rec.z - k.z)) < tol for k in kept):
            kept.append(rec)
    return kept


def solve_all(S: GluingSystem, opts: SolverOptions | None = None) -> list[SolutionRecord]:
    """Multi-start search; distinct solutions sorted by volume, largest first.

    Records from different starts are merged in start order, so the result
    does not depend on ``opts.threads``.
    """
    opts = opts or SolverOptions()
    if S.tet_count == 0 or opts.restarts == 0:
        return []
    starts = random_starts(S.tet_count, opts)

    def run(z0):
        return newton_refine(S, z0, opts)

    if opts.threads > 1:
        with ThreadPoolExecutor(max_workers=opts.threads) as pool:
            results = list(pool.map(run, starts))
    else:
        results = [run(z0) for z0 in starts]
    found = _dedup([r for r in results if r], opts.dedup_tol)
    return sorted(found, key=lambda rec: -rec.volume)


def _serial_key(rec: SolutionRecord) -> tuple:
    return tuple(x for w in rec.z for x in (float(w.real), float(w.imag)))


def max_volume(records, tie_tol: float = 1e-9) -> SolutionRecord | None:
    """Record of largest volume; near ties go to the lexicographically smallest shapes."""
    records = list(records)
    if not records:
        return None
    top = max(rec.volume for rec in records)
    tied = [rec for rec in records if rec.volume >= top - tie_tol]
    return min(tied, key=_serial_key)


def tangent_volume_derivative(
    S: GluingSystem, rec: SolutionRecord, rank_tol: float = 1e-8, step: float = 1e-5
) -> list[float]:
    """Central-difference derivatives of the volume along the numerical kernel of the Jacobian."""
    z = np.asarray(rec.z, dtype=complex)
    if S.tet_count == 0:
        return []
    R = realify(jacobian(S, z))
    _, sv, Vt = np.linalg.svd(R)
    top = sv[0] if sv.size else 0.0
    rank = int(np.sum(sv > rank_tol * max(top, 1.0)))
    T = S.tet_count
    out = []
    for v in Vt[rank:]:
        dz = v[:T] + 1j * v[T:]
        out.append((volume(z + step * dz) - volume(z - step * dz)) / (2 * step))
    return out


def conjugate_check(S: GluingSystem, rec: SolutionRecord) -> tuple[float, float]:
    """Max residual at the conjugate solution and ``|vol(conj) + vol|``."""
    zc = np.conj(rec.z)
    return _max_res(S, zc), abs(volume(zc) + rec.volume)


def angle_sums(S: GluingSystem, rec: SolutionRecord):
    return angle_report(S, rec.z)
