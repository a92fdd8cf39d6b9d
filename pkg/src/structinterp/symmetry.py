"""Symmetry classes on the imaginary axis and membership tests.

Algebraic classes (Even, Odd, J-Even, general (A, B)) are checked on the
coefficients. Sign classes (GPE, nu-GPE) are checked by sampling Hermitian
eigenvalues of F(i*omega) on a grid; a passing sweep is evidence, not proof.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SingularMatrixError
from .grid import GridSpec, exclusion_mask, golden_min, hybrid_grid, pick_worst, polynomial_range
from .polycore import MatrixPolynomial, evaluate_many, hash_adjoint

COND_LIMIT = 1e12
INVOLUTION_TOL = 1e-10

TAGS = ("even", "odd", "jeven", "general_ab", "gpe", "nugpe")


def check_nonsingular(X, name="matrix"):
    X = np.atleast_2d(np.asarray(X, dtype=complex))
    if X.shape[0] != X.shape[1]:
        raise ValueError(f"{name} must be square, got {X.shape}")
    cond = np.linalg.cond(X)
    if not np.isfinite(cond) or cond > COND_LIMIT:
        raise SingularMatrixError(f"{name} is singular or ill-conditioned (cond={cond:.3e})")
    return X


def signature(nu: int, m: int) -> np.ndarray:
    """diag{-I_nu, I_(m-nu)}."""
    return np.diag(np.r_[-np.ones(nu), np.ones(m - nu)]).astype(complex)


@dataclass(frozen=True, eq=False)
class SymmetryClass:
    tag: str
    J: np.ndarray | None = None
    A: np.ndarray | None = None
    B: np.ndarray | None = None
    nu: int | None = None
    R: np.ndarray | None = None

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown symmetry class {self.tag!r}; expected one of {TAGS}")
        if self.tag == "jeven":
            if self.J is None:
                raise ValueError("jeven requires J")
            J = check_nonsingular(self.J, "J")
            err = max(np.max(np.abs(J - J.conj().T)), np.max(np.abs(J @ J - np.eye(J.shape[0]))))
            if err > INVOLUTION_TOL:
                raise ValueError(f"J must satisfy J = J^* = J^-1 (residual {err:.3e})")
            object.__setattr__(self, "J", J)
        elif self.tag == "general_ab":
            if self.A is None or self.B is None:
                raise ValueError("general_ab requires A and B")
            A = check_nonsingular(self.A, "A")
            B = check_nonsingular(self.B, "B")
            if A.shape != B.shape:
                raise ValueError("A and B must have the same shape")
            object.__setattr__(self, "A", A)
            object.__setattr__(self, "B", B)
        elif self.tag == "nugpe":
            if self.nu is None:
                raise ValueError("nugpe requires nu")
            if self.R is not None:
                R = check_nonsingular(self.R, "R")
                object.__setattr__(self, "R", R)
                if not 1 <= self.nu <= R.shape[0] - 1:
                    raise ValueError(f"nu must lie in [1, m-1], got {self.nu}")
            elif self.nu < 1:
                raise ValueError(f"nu must lie in [1, m-1], got {self.nu}")

    # convenience constructors
    @classmethod
    def even(cls):
        return cls("even")

    @classmethod
    def odd(cls):
        return cls("odd")

    @classmethod
    def gpe(cls):
        return cls("gpe")

    @classmethod
    def jeven(cls, J):
        return cls("jeven", J=J)

    @classmethod
    def general_ab(cls, A, B):
        return cls("general_ab", A=A, B=B)

    @classmethod
    def nugpe(cls, nu, R=None):
        return cls("nugpe", nu=int(nu), R=R)

    def ab(self, m: int):
        """The (A, B) pair with P^# = A P B that this class imposes on the interpolant P."""
        eye = np.eye(m, dtype=complex)
        if self.tag in ("even", "gpe", "nugpe"):
            return eye, eye
        if self.tag == "odd":
            # A = iI, B = (A^*)^-1 = iI
            return 1j * eye, 1j * eye
        if self.tag == "jeven":
            self._check_dim(self.J, m)
            return self.J, self.J
        self._check_dim(self.A, m)
        return self.A, self.B

    def validate_dim(self, m: int):
        for X in (self.J, self.A, self.B, self.R):
            if X is not None:
                self._check_dim(X, m)
        if self.tag == "nugpe" and not 1 <= self.nu <= m - 1:
            raise ValueError(f"nu must lie in [1, m-1] = [1, {m - 1}], got {self.nu}")

    @staticmethod
    def _check_dim(X, m):
        if X.shape != (m, m):
            raise ValueError(f"class matrix has shape {X.shape}, expected {(m, m)}")


@dataclass(frozen=True, eq=False)
class SweepReport:
    """Evidence from a grid sweep.

    ``worst_value`` is the smallest eigenvalue (GPE) or the largest inertia
    mismatch count (nu-GPE) at ``worst_omega``; ``grid`` holds the evaluated
    (non-excluded) frequencies.
    """

    grid: np.ndarray = field(repr=False)
    worst_value: float
    worst_omega: float
    verdict: bool
    kind: str = "gpe"
    excluded: int = 0


def _scaled_residual(D, C):
    return float(np.max(np.abs(D))) / max(1.0, float(np.max(np.abs(C))))


def even_residual(F: MatrixPolynomial) -> float:
    return _scaled_residual(F.coeffs - hash_adjoint(F).coeffs, F.coeffs)


def odd_residual(F: MatrixPolynomial) -> float:
    return _scaled_residual(F.coeffs + hash_adjoint(F).coeffs, F.coeffs)


def general_ab_residual(F: MatrixPolynomial, A, B) -> float:
    """max_k |C_k^* - (-1)^k A C_k B|, relative to the largest coefficient (floored at 1)."""
    A = check_nonsingular(A, "A")
    B = check_nonsingular(B, "B")
    c = F.coeffs
    signs = (-1.0) ** np.arange(c.shape[0])
    D = np.conj(np.swapaxes(c, 1, 2)) - signs[:, None, None] * (A @ c @ B)
    return _scaled_residual(D, c)


def is_even(F: MatrixPolynomial, tol: float = 1e-9) -> bool:
    return even_residual(F) <= tol


def is_odd(F: MatrixPolynomial, tol: float = 1e-9) -> bool:
    return odd_residual(F) <= tol


def satisfies_general_ab(F: MatrixPolynomial, A, B, tol: float = 1e-9) -> bool:
    return general_ab_residual(F, A, B) <= tol


def resolve_grid(F: MatrixPolynomial, grid, extra=()) -> np.ndarray:
    """Turn a GridSpec, an explicit array, or None into a frequency array."""
    if grid is None:
        grid = GridSpec()
    if isinstance(grid, GridSpec):
        omax = grid.omega_max if grid.omega_max is not None else polynomial_range(F.coeffs)
        return hybrid_grid(omax, omax, grid.points, extra)
    g = np.asarray(grid, dtype=float).ravel()
    if g.size == 0:
        raise ValueError("grid is empty")
    return np.sort(g)


def hermitian_on_axis(F: MatrixPolynomial, omegas) -> np.ndarray:
    H = evaluate_many(F, 1j * np.asarray(omegas, dtype=float))
    return 0.5 * (H + np.conj(np.swapaxes(H, 1, 2)))


def _swept(F, grid, exclusions):
    omegas = resolve_grid(F, grid)
    keep = exclusion_mask(omegas, exclusions)
    if not np.any(keep):
        raise ValueError("every grid point is excluded")
    return omegas[keep], int(np.sum(~keep))


def gpe_sweep(
    F: MatrixPolynomial, grid=None, tol: float = 1e-9, exclusions=(), refine_iters: int | None = None
) -> SweepReport:
    """Sample lambda_min of F(i omega) on the grid.

    A point passes when lambda_min >= -tol * max(1, ||F(i omega)||_2). The
    worst point is the one with the most negative scaled eigenvalue, then
    polished by a golden-section search between its grid neighbours
    (``refine_iters`` steps, default taken from the GridSpec or 64).
    """
    if refine_iters is None:
        refine_iters = grid.refine_iters if isinstance(grid, GridSpec) else 64
    if not is_even(F):
        raise ValueError(f"gpe_sweep requires an Even polynomial (residual {even_residual(F):.3e})")
    omegas, excluded = _swept(F, grid, exclusions)
    eigs = np.linalg.eigvalsh(hermitian_on_axis(F, omegas))
    scale = np.maximum(1.0, np.max(np.abs(eigs), axis=1))
    scores = eigs[:, 0] / scale
    i = pick_worst(omegas, scores)
    w, score = _polish(F, omegas, i, scores[i], exclusions, refine_iters)
    lam = np.linalg.eigvalsh(hermitian_on_axis(F, [w])[0])
    return SweepReport(
        grid=omegas,
        worst_value=float(lam[0]),
        worst_omega=float(w),
        verdict=bool(np.all(scores >= -tol) and score >= -tol),
        kind="gpe",
        excluded=excluded,
    )


def _scaled_min_eig(F, w):
    lam = np.linalg.eigvalsh(hermitian_on_axis(F, [w])[0])
    return float(lam[0] / max(1.0, np.max(np.abs(lam))))


def _polish(F, omegas, i, score, exclusions, iters):
    """Golden-section search between the neighbours of grid point i; keeps the grid point unless beaten."""
    lo = omegas[max(i - 1, 0)]
    hi = omegas[min(i + 1, omegas.size - 1)]
    if iters <= 0 or hi <= lo:
        return omegas[i], score

    def f(w):
        if not exclusion_mask(np.array([w]), exclusions)[0]:
            return np.inf
        return _scaled_min_eig(F, w)

    w, v = golden_min(f, lo, hi, iters)
    return (w, v) if v < score else (omegas[i], score)


def inertia(H: np.ndarray, tol: float = 1e-9):
    """(negative, zero, positive) eigenvalue counts of a Hermitian matrix, relative tolerance."""
    lam = np.linalg.eigvalsh(0.5 * (H + H.conj().T))
    thr = tol * max(1.0, float(np.max(np.abs(lam))))
    neg = int(np.sum(lam < -thr))
    pos = int(np.sum(lam > thr))
    return neg, lam.size - neg - pos, pos


def nugpe_sweep(F: MatrixPolynomial, nu: int, grid=None, tol: float = 1e-9, exclusions=()) -> SweepReport:
    """Check that F(i omega) has exactly nu negative and m-nu positive eigenvalues on the grid.

    ``exclusions`` is a sequence of (omega_center, radius) pairs skipped by the
    sweep, meant for neighbourhoods of interpolation nodes on the axis.
    """
    m = F.m
    if not 1 <= nu <= m - 1:
        raise ValueError(f"nu must lie in [1, m-1], got {nu}")
    if not is_even(F):
        raise ValueError(f"nugpe_sweep requires an Even polynomial (residual {even_residual(F):.3e})")
    omegas, excluded = _swept(F, grid, exclusions)
    eigs = np.linalg.eigvalsh(hermitian_on_axis(F, omegas))
    scale = np.maximum(1.0, np.max(np.abs(eigs), axis=1))
    thr = tol * scale
    neg = np.sum(eigs < -thr[:, None], axis=1)
    pos = np.sum(eigs > thr[:, None], axis=1)
    mismatch = np.abs(neg - nu) + np.abs(pos - (m - nu))
    if np.any(mismatch):
        i = pick_worst(omegas, -mismatch.astype(float))
    else:
        margin = np.min(np.abs(eigs), axis=1) / scale
        i = pick_worst(omegas, margin)
    return SweepReport(
        grid=omegas,
        worst_value=float(mismatch[i]),
        worst_omega=float(omegas[i]),
        verdict=not bool(np.any(mismatch)),
        kind="nugpe",
        excluded=excluded,
    )


def structure_sweep(F: MatrixPolynomial, A, B, grid=None, tol: float = 1e-9) -> SweepReport:
    """Sample the axis identity F(i omega)^* = A F(i omega) B (Hermitian for Even).

    ``worst_value`` is the largest scaled asymmetry ||F^* - A F B|| / max(1, ||F||).
    """
    A = check_nonsingular(A, "A")
    B = check_nonsingular(B, "B")
    omegas, _ = _swept(F, grid, ())
    H = evaluate_many(F, 1j * omegas)
    D = np.conj(np.swapaxes(H, 1, 2)) - A @ H @ B
    asym = np.linalg.norm(D, ord=2, axis=(1, 2)) / np.maximum(1.0, np.linalg.norm(H, ord=2, axis=(1, 2)))
    i = pick_worst(omegas, -asym)
    return SweepReport(
        grid=omegas,
        worst_value=float(asym[i]),
        worst_omega=float(omegas[i]),
        verdict=bool(np.all(asym <= tol)),
        kind="structure",
    )


def coefficient_residual(F: MatrixPolynomial, symmetry: SymmetryClass) -> float:
    """Residual of C_k^* = (-1)^k A C_k B for the (A, B) pair of ``symmetry``."""
    A, B = symmetry.ab(F.m)
    return general_ab_residual(F, A, B)
