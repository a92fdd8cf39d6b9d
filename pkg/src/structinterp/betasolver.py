"""Thresholds beta_hat such that F = P + beta * Psi lands in GPE or nu-GPE.

All three variants reduce to a 1-D extremum over omega of a ratio
    objective(omega) = spectral quantity of P(i omega) / prod_j |x_j - i omega|^2
found by a grid scan followed by golden-section polishing of the best local
extrema. The ratio decays at infinity because deg Psi > deg P, which bounds
the scan range.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.csgraph import connected_components

from .errors import ConstraintError, SingularMatrixError
from .grid import GridSpec, exclusion_mask, golden_min, hybrid_grid, pick_worst
from .neutral import NeutralPolynomial, axis_weight, build_neutral, nugpe_parameter
from .polycore import MatrixPolynomial
from .symmetry import SymmetryClass, check_nonsingular, gpe_sweep, hermitian_on_axis, is_even

DECAY_RATIO = 1e-6
MAX_OMEGA = 1e12
MAX_BRACKETS = 8


@dataclass(frozen=True)
class Certificate:
    """Where the extremum of the sweep objective was found and on what grid."""

    objective: str  # "min_eig_ratio" (GPE) or "norm_ratio" (nu-GPE)
    arg_omega: float
    value: float
    omega_lin: float
    omega_max: float
    points: int
    exclusion_radius: float
    exclusions: tuple = ()
    grid_points: int = 0
    at_exclusion_boundary: bool = False

    def grid(self, nodes=()) -> np.ndarray:
        """Rebuild the evaluated sweep grid (exclusions removed)."""
        g = _grid(self.omega_lin, self.omega_max, self.points, nodes, self.exclusions)
        return g[exclusion_mask(g, self.exclusions)]


@dataclass(frozen=True, eq=False)
class Refinement:
    T: np.ndarray
    r: int
    order: tuple


@dataclass(frozen=True, eq=False)
class InterpolantFamily:
    """The family F(beta) = P + beta * Psi with its admissibility threshold.

    GPE modes admit beta >= beta_hat; the nu-GPE mode admits beta > beta_hat.
    Mode "structural" (Even/Odd/J-Even/general A, B) admits every real beta.
    """

    P: MatrixPolynomial
    psi: NeutralPolynomial
    beta_hat: float
    mode: str
    certificate: Certificate | None = None
    refinement: Refinement | None = None
    nu: int | None = field(default=None)

    def at(self, beta) -> MatrixPolynomial:
        return assemble(self.P, self.psi, beta)

    def admissible(self, beta) -> bool:
        if self.mode == "structural":
            return True
        if self.mode == "nugpe":
            return beta > self.beta_hat
        return beta >= self.beta_hat

    def sweep_grid(self) -> np.ndarray:
        return self.certificate.grid(self.psi.nodes)

    def exclusions(self):
        return self.certificate.exclusions if self.certificate is not None else ()


def assemble(P: MatrixPolynomial, psi, beta) -> MatrixPolynomial:
    """F = P + beta * Psi (``psi`` may be a NeutralPolynomial or a MatrixPolynomial)."""
    expansion = getattr(psi, "expansion", psi)
    if expansion.m != P.m:
        raise ValueError(f"dimension mismatch: P is {P.m}x{P.m}, Psi is {expansion.m}x{expansion.m}")
    return P + beta * expansion


# ---------------------------------------------------------------- scanning


def _on_axis_centers(nodes, tol):
    nodes = np.asarray(nodes, dtype=complex)
    return [float(x.imag) for x in nodes if abs(x.real) <= tol * (1 + abs(x))]


def _grid(omega_lin, omega_max, points, nodes, exclusions):
    extra = [x.imag for x in np.asarray(nodes, dtype=complex)]
    for c, r in exclusions:
        extra += [c, c - r, c + r]
    return hybrid_grid(omega_lin, omega_max, points, extra)


def _sweep_range(nodes, norms, peak, omega_lin):
    """Smallest doubling of omega_lin beyond which the ratio bound stays under DECAY_RATIO * peak."""
    if peak <= 0:
        return omega_lin
    radii = np.abs(np.asarray(nodes, dtype=complex))

    def bound(w):
        num = sum(nk * w**k for k, nk in enumerate(norms))
        return num / float(np.prod((w - radii) ** 2))

    w = omega_lin
    while w < MAX_OMEGA:
        if bound(w) <= DECAY_RATIO * peak and bound(2 * w) <= bound(w):
            return w
        w *= 2
    return MAX_OMEGA


def _scan(objective, nodes, coeff_norms, grid: GridSpec | None, match_tol=1e-9):
    """Grid scan plus golden-section polishing; minimises ``objective``.

    ``objective`` maps an array of omegas to an array of values.
    Returns (best_value, best_omega, Certificate).
    """
    grid = grid or GridSpec()
    nodes = np.asarray(nodes, dtype=complex)
    omega_lin = 10.0 * (1.0 + float(np.max(np.abs(nodes))))
    radius = grid.exclusion_radius if grid.exclusion_radius is not None else 1e-4 * (1.0 + omega_lin)
    exclusions = tuple((c, radius) for c in _on_axis_centers(nodes, match_tol))
    if grid.omega_max is not None:
        omega_max = float(grid.omega_max)
    else:
        probe = np.linspace(-omega_lin, omega_lin, 513)
        probe = probe[exclusion_mask(probe, exclusions)]
        peak = float(np.max(np.abs(objective(probe)))) if probe.size else 0.0
        omega_max = _sweep_range(nodes, coeff_norms, peak, omega_lin)

    omegas = _grid(omega_lin, omega_max, grid.points, nodes, exclusions)
    keep = exclusion_mask(omegas, exclusions)
    if not np.any(keep):
        raise ValueError("every grid point is excluded")
    vals = np.full(omegas.shape, np.inf)
    vals[keep] = objective(omegas[keep])

    def f(w):
        if not exclusion_mask(np.array([w]), exclusions)[0]:
            return np.inf
        return float(objective(np.array([w]))[0])

    # local minima among kept points; neighbours across an exclusion gap count as +inf
    left = np.r_[np.inf, vals[:-1]]
    right = np.r_[vals[1:], np.inf]
    local = np.flatnonzero(keep & (vals <= left) & (vals <= right))
    local = local[np.argsort(vals[local], kind="stable")][:MAX_BRACKETS]
    cand_w = [omegas[i] for i in local]
    cand_v = [vals[i] for i in local]
    for i in local:
        lo = omegas[i - 1] if i > 0 and keep[i - 1] else omegas[i]
        hi = omegas[i + 1] if i + 1 < omegas.size and keep[i + 1] else omegas[i]
        if hi > lo and grid.refine_iters > 0:
            w, v = golden_min(f, lo, hi, grid.refine_iters)
            if v < vals[i]:
                cand_w.append(w)
                cand_v.append(v)
    cand_w = np.array(cand_w)
    cand_v = np.array(cand_v)
    j = pick_worst(cand_w, cand_v)
    best_w, best_v = float(cand_w[j]), float(cand_v[j])
    at_boundary = any(abs(best_w - c) <= r + 2 * _spacing(omegas, best_w) for c, r in exclusions)
    cert = Certificate(
        objective="",
        arg_omega=best_w,
        value=best_v,
        omega_lin=omega_lin,
        omega_max=omega_max,
        points=grid.points,
        exclusion_radius=radius,
        exclusions=exclusions,
        grid_points=int(np.sum(keep)),
        at_exclusion_boundary=bool(at_boundary),
    )
    return best_v, best_w, cert


def _spacing(omegas, w):
    i = int(np.clip(np.searchsorted(omegas, w), 1, omegas.size - 1))
    return float(omegas[i] - omegas[i - 1])


def _congruence(X, coeffs):
    """X C_k X^* for every coefficient."""
    return X @ coeffs @ X.conj().T


def _min_eig_objective(P: MatrixPolynomial, Linv, nodes):
    Pt = MatrixPolynomial(_congruence(Linv, P.coeffs), normalize=False)

    def objective(w):
        H = hermitian_on_axis(Pt, w)
        return np.linalg.eigvalsh(H)[:, 0] / axis_weight(nodes, w)

    return objective, np.linalg.norm(Pt.coeffs, ord=2, axis=(1, 2))


def _cholesky_inverse(M, name="M"):
    M = np.asarray(M, dtype=complex)
    try:
        L = np.linalg.cholesky(0.5 * (M + M.conj().T))
    except np.linalg.LinAlgError:
        raise SingularMatrixError(f"{name} must be positive definite") from None
    if np.linalg.cond(L) ** 2 > 1e12:
        raise SingularMatrixError(f"{name} is numerically singular")
    return np.linalg.inv(L)


# ---------------------------------------------------------------- GPE


def beta_hat_gpe(P: MatrixPolynomial, psi: NeutralPolynomial, grid: GridSpec | None = None):
    """Least beta >= 0 with P + beta * Psi in GPE, for a positive definite Psi parameter M.

    Minimises lambda_min(L^-1 P(i omega) L^-*) / prod_j |x_j - i omega|^2
    with M = L L^*, which has the eigenvalues of M^-1 P(i omega).
    Returns (beta_hat, Certificate).
    """
    if not is_even(P):
        raise ValueError("beta_hat_gpe requires an Even P")
    if psi.m != P.m:
        raise ValueError("P and Psi dimensions differ")
    Linv = _cholesky_inverse(psi.M)
    objective, norms = _min_eig_objective(P, Linv, psi.nodes)
    best_v, _, cert = _scan(objective, psi.nodes, norms, grid)
    cert = _with_objective(cert, "min_eig_ratio")
    return max(0.0, -best_v), cert


def _with_objective(cert, name):
    return Certificate(**{**cert.__dict__, "objective": name})


def gpe_family(P, psi, grid=None) -> InterpolantFamily:
    beta, cert = beta_hat_gpe(P, psi, grid)
    return InterpolantFamily(P=P, psi=psi, beta_hat=beta, mode="gpe", certificate=cert)


@dataclass(frozen=True, eq=False)
class BlockSplit:
    """T P T^* = diag{P_r, P_rest} with P_rest in GPE and P_r failing the sweep."""

    r: int
    T: np.ndarray
    order: tuple
    P_r: MatrixPolynomial | None
    P_rest: MatrixPolynomial | None
    components: tuple


def block_diagonalize(P: MatrixPolynomial, T=None, grid=None, tol: float = 1e-9) -> BlockSplit:
    """Split T P T^* into a GPE-failing block and a GPE block.

    Without T the detector looks for a symmetric permutation: connected
    components of the union sparsity pattern of the coefficients. Components
    failing gpe_sweep go first (size r). One component only gives r = 0 or
    r = m.
    """
    m = P.m
    T0 = np.eye(m, dtype=complex) if T is None else check_nonsingular(T, "T")
    Q = _congruence(T0, P.coeffs)
    scale = max(float(np.max(np.abs(Q))), 1e-300)
    pattern = np.any(np.abs(Q) > tol * scale, axis=0)
    pattern = pattern | pattern.T | np.eye(m, dtype=bool)
    ncomp, labels = connected_components(pattern, directed=False)
    comps = [tuple(np.flatnonzero(labels == c)) for c in range(ncomp)]
    failing, passing = [], []
    for comp in comps:
        sub = MatrixPolynomial(Q[:, comp][:, :, comp])
        (passing if gpe_sweep(sub, grid).verdict else failing).append(comp)
    order = tuple(int(i) for comp in failing + passing for i in comp)
    r = sum(len(c) for c in failing)
    perm = np.eye(m, dtype=complex)[list(order)]
    Tf = perm @ T0
    Qp = Q[:, list(order)][:, :, list(order)]
    P_r = MatrixPolynomial(Qp[:, :r, :r]) if r > 0 else None
    P_rest = MatrixPolynomial(Qp[:, r:, r:]) if r < m else None
    return BlockSplit(r=r, T=Tf, order=order, P_r=P_r, P_rest=P_rest, components=tuple(comps))


def beta_hat_refined(P: MatrixPolynomial, reduced, M_r=None, T=None, M_rest=None, grid=None):
    """Threshold over the GPE-failing block only, allowing a singular overall M.

    With T P T^* = diag{P_r, P_rest}, Psi is built from
    M = T^-1 diag{M_r, M_rest} T^-*, M_r positive definite (rescaled to unit
    norm) and M_rest PSD (zero by default, which lowers the McMillan degree
    of F). r = m falls back to beta_hat_gpe; r = 0 gives beta_hat = 0.
    Returns (beta_hat, InterpolantFamily).
    """
    if not is_even(P):
        raise ValueError("beta_hat_refined requires an Even P")
    m = P.m
    split = block_diagonalize(P, T, grid)
    r = split.r
    Tinv = np.linalg.inv(split.T)
    refinement = Refinement(T=split.T, r=r, order=split.order)
    sym = SymmetryClass.gpe()

    if r == 0:
        D = np.eye(m) if M_rest is None else np.asarray(M_rest, dtype=complex)
        psi = build_neutral(reduced, Tinv @ D @ Tinv.conj().T, sym)
        try:
            _, cert = beta_hat_gpe(P, psi, grid)
        except SingularMatrixError:
            cert = None
        fam = InterpolantFamily(P, psi, 0.0, "gpe", cert, refinement)
        return 0.0, fam

    if r == m:
        Mr = np.eye(m) if M_r is None else _unit_pd(M_r, m)
        psi = build_neutral(reduced, Tinv @ Mr @ Tinv.conj().T, sym)
        beta, cert = beta_hat_gpe(P, psi, grid)
        return beta, InterpolantFamily(P, psi, beta, "gpe", cert, refinement)

    Mr = np.eye(r, dtype=complex) if M_r is None else _unit_pd(M_r, r)
    Mrest = np.zeros((m - r, m - r), dtype=complex) if M_rest is None else np.asarray(M_rest, dtype=complex)
    if Mrest.shape != (m - r, m - r):
        raise ValueError(f"M_rest must be {(m - r, m - r)}, got {Mrest.shape}")
    lam = np.linalg.eigvalsh(0.5 * (Mrest + Mrest.conj().T))
    if lam.size and lam[0] < -1e-10 * max(1.0, float(np.max(np.abs(lam)))):
        raise ConstraintError("M_rest must be positive semidefinite", float(-lam[0]))
    D = np.zeros((m, m), dtype=complex)
    D[:r, :r] = Mr
    D[r:, r:] = Mrest
    psi = build_neutral(reduced, Tinv @ D @ Tinv.conj().T, sym)
    objective, norms = _min_eig_objective(split.P_r, _cholesky_inverse(Mr, "M_r"), psi.nodes)
    best_v, _, cert = _scan(objective, psi.nodes, norms, grid)
    beta = max(0.0, -best_v)
    fam = InterpolantFamily(P, psi, beta, "gpe_refined", _with_objective(cert, "min_eig_ratio"), refinement)
    return beta, fam


def _unit_pd(M, k):
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    if M.shape != (k, k):
        raise ValueError(f"M_r must be {(k, k)}, got {M.shape}")
    _cholesky_inverse(M, "M_r")
    return M / np.linalg.norm(M, 2)


# ---------------------------------------------------------------- nu-GPE


def beta_hat_nugpe(P: MatrixPolynomial, reduced, R=None, nu: int = 1, grid=None, norm: str = "spectral"):
    """Norm bound beyond which P + beta * Psi keeps inertia (nu, m - nu) on the axis.

    beta_hat = max_omega ||R^-1 P(i omega) R^-*||_2 / prod_j |x_j - i omega|^2,
    with Psi built from M = R diag{-I_nu, I_(m-nu)} R^*. Neighbourhoods of
    on-axis nodes are excluded. Every beta > beta_hat is admissible.
    Returns (beta_hat, InterpolantFamily).
    """
    if norm != "spectral":
        raise ValueError(f"unsupported norm {norm!r}; only 'spectral' is implemented")
    if not is_even(P):
        raise ValueError("beta_hat_nugpe requires an Even P")
    m = P.m
    if not 1 <= nu <= m - 1:
        raise ValueError(f"nu must lie in [1, m-1], got {nu}")
    R = np.eye(m, dtype=complex) if R is None else check_nonsingular(R, "R")
    psi = build_neutral(reduced, nugpe_parameter(R, nu), SymmetryClass.nugpe(nu, R))
    Rinv = np.linalg.inv(R)
    Pt = MatrixPolynomial(_congruence(Rinv, P.coeffs), normalize=False)
    nodes = psi.nodes

    def neg_ratio(w):
        lam = np.linalg.eigvalsh(hermitian_on_axis(Pt, w))
        return -np.max(np.abs(lam), axis=1) / axis_weight(nodes, w)

    norms = np.linalg.norm(Pt.coeffs, ord=2, axis=(1, 2))
    best_v, _, cert = _scan(neg_ratio, nodes, norms, grid)
    beta = max(0.0, -best_v)
    cert = Certificate(**{**cert.__dict__, "objective": "norm_ratio", "value": beta})
    fam = InterpolantFamily(P, psi, beta, "nugpe", cert, nu=nu)
    return beta, fam

