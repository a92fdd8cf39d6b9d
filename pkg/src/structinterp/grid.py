"""Frequency grids for sweeps along the imaginary axis s = i*omega."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_POINTS = 4096
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class GridSpec:
    """Sweep configuration.

    ``omega_max=None`` lets the caller pick the range from the problem data;
    ``exclusion_radius=None`` selects the default radius around on-axis nodes.
    """

    omega_max: float | None = None
    points: int = DEFAULT_POINTS
    exclusion_radius: float | None = None
    refine_iters: int = 64

    def __post_init__(self):
        if self.omega_max is not None and not self.omega_max > 0:
            raise ValueError("omega_max must be positive")
        if self.points < 3:
            raise ValueError("points must be at least 3")
        if self.exclusion_radius is not None and self.exclusion_radius < 0:
            raise ValueError("exclusion_radius must be nonnegative")
        if self.refine_iters < 0:
            raise ValueError("refine_iters must be nonnegative")


def hybrid_grid(omega_lin: float, omega_max: float, points: int = DEFAULT_POINTS, extra=()) -> np.ndarray:
    """Symmetric grid: linear on [-omega_lin, omega_lin], logarithmic out to omega_max.

    ``extra`` frequencies are mirrored and merged in. The result always
    contains 0 and is exactly symmetric about it.
    """
    omega_lin = min(omega_lin, omega_max)
    if omega_max > omega_lin * (1 + 1e-12):
        n_log = points // 4
    else:
        n_log = 0
    k = max((points - 2 * n_log - 1) // 2, 1)
    pos = omega_lin * np.arange(1, k + 1) / k
    if n_log:
        pos = np.concatenate([pos, np.geomspace(omega_lin, omega_max, n_log + 1)[1:]])
    ext = np.abs(np.asarray(list(extra), dtype=float))
    ext = ext[(ext > 0) & (ext <= omega_max)]
    pos = np.unique(np.concatenate([pos, ext]))
    return np.concatenate([-pos[::-1], [0.0], pos])


def polynomial_range(coeffs: np.ndarray) -> float:
    """Heuristic sweep range for a bare polynomial: 10 * (1 + Cauchy-type bound)."""
    norms = np.linalg.norm(coeffs, ord=2, axis=(1, 2)) if coeffs.shape[0] else np.zeros(1)
    lead = norms[-1]
    if coeffs.shape[0] == 1 or lead == 0:
        return 10.0
    return 10.0 * (1.0 + float(np.max(norms[:-1]) / lead))


def exclusion_mask(grid: np.ndarray, exclusions) -> np.ndarray:
    """True where a grid point lies outside every (center, radius) exclusion."""
    keep = np.ones(grid.shape, dtype=bool)
    for center, radius in exclusions:
        keep &= np.abs(grid - center) > radius
    return keep


def pick_worst(omegas: np.ndarray, scores: np.ndarray, rtol: float = 1e-12) -> int:
    """Index of the minimum score; near-ties go to smaller |omega|, then negative omega."""
    best = np.min(scores)
    cand = np.flatnonzero(scores <= best + rtol * max(1.0, abs(best)))
    order = np.lexsort((omegas[cand], np.abs(omegas[cand])))
    return int(cand[order[0]])


def golden_min(f, a: float, b: float, iters: int = 64):
    """Golden-section search for a minimum of scalar f on [a, b]; returns (x, f(x))."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)
