"""Neutral polynomials Psi(s) = prod_j (x_j - s) M (x_j^* + s).

Psi vanishes at every reduced node and at its mirror -x_j^*, so adding any
multiple of Psi to an interpolant keeps all interpolation conditions. The
class of Psi is set by the parameter M.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConstraintError
from .polycore import MatrixPolynomial
from .symmetry import SymmetryClass, check_nonsingular, inertia, signature

CLASS_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class NeutralPolynomial:
    nodes: np.ndarray
    M: np.ndarray
    expansion: MatrixPolynomial = field(repr=False)
    normalized: bool = False

    @property
    def m(self) -> int:
        return self.M.shape[0]

    def scalar_factor(self) -> np.ndarray:
        """Ascending coefficients of g(s) = prod_j (x_j - s)(x_j^* + s)."""
        return scalar_factor(self.nodes)

    def on_axis(self, omega):
        return psi_on_axis(self, omega)


def scalar_factor(nodes) -> np.ndarray:
    # (x - s)(x^* + s) = |x|^2 + 2i Im(x) s - s^2
    g = np.array([1.0 + 0j])
    for x in np.atleast_1d(np.asarray(nodes, dtype=complex)):
        g = np.convolve(g, [abs(x) ** 2, 2j * x.imag, -1.0])
    return g


def axis_weight(nodes, omegas) -> np.ndarray:
    """prod_j |x_j - i omega|^2 for an array of real omegas."""
    w = np.asarray(omegas, dtype=float)
    out = np.ones(w.shape)
    for x in np.atleast_1d(np.asarray(nodes, dtype=complex)):
        out = out * np.abs(x - 1j * w) ** 2
    return out


def _hermitian_residual(X):
    return float(np.max(np.abs(X - X.conj().T))) / max(1.0, float(np.max(np.abs(X))))


def class_residual(M: np.ndarray, symmetry: SymmetryClass) -> float:
    """How far M is from the constraint that makes Psi carry ``symmetry`` (0 = satisfied)."""
    m = M.shape[0]
    tag = symmetry.tag
    if tag in ("even", "odd", "jeven", "general_ab"):
        # Psi^# = A Psi B  <=>  M^* = A M B; for B = (A^*)^-1 this says A M is Hermitian
        A, B = symmetry.ab(m)
        return float(np.max(np.abs(M.conj().T - A @ M @ B))) / max(1.0, float(np.max(np.abs(M))))
    herm = _hermitian_residual(M)
    if herm > CLASS_TOL:
        return herm
    lam = np.linalg.eigvalsh(0.5 * (M + M.conj().T))
    scale = max(1.0, float(np.max(np.abs(lam))))
    if tag == "gpe":
        return max(0.0, -float(lam[0]) / scale)
    neg, zero, pos = inertia(M, CLASS_TOL)
    return float(abs(neg - symmetry.nu) + abs(pos - (m - symmetry.nu)))


def nugpe_parameter(R, nu: int) -> np.ndarray:
    """M = R diag{-I_nu, I_(m-nu)} R^*."""
    R = check_nonsingular(R, "R")
    return R @ signature(nu, R.shape[0]) @ R.conj().T


def default_parameter(symmetry: SymmetryClass, m: int) -> np.ndarray:
    """Unit-norm M satisfying the class constraint: A^-1 for algebraic classes, I for GPE.

    A^-1 only works when B = (A^*)^-1; other (A, B) pairs need an explicit M.
    """
    if symmetry.tag == "nugpe":
        R = symmetry.R if symmetry.R is not None else np.eye(m)
        return nugpe_parameter(R, symmetry.nu)
    if symmetry.tag == "gpe":
        return np.eye(m, dtype=complex)
    A, _ = symmetry.ab(m)
    M = np.linalg.inv(A)
    return M / np.linalg.norm(M, 2)


def _class_dim(symmetry):
    for X in (symmetry.J, symmetry.A, symmetry.R):
        if X is not None:
            return X.shape[0]
    return 1


def build_neutral(nodes, M=None, symmetry: SymmetryClass | None = None, normalize: bool = False) -> NeutralPolynomial:
    """Neutral polynomial over ``nodes`` (a ReducedData or a node sequence).

    M is checked against ``symmetry`` (Hermitian for Even, skew-Hermitian for
    Odd, A M Hermitian for (A, B) classes, PSD for GPE, inertia (nu, m-nu)
    for nu-GPE). ``normalize`` rescales M to unit spectral norm.
    """
    m = getattr(nodes, "m", None)
    nodes = np.asarray(getattr(nodes, "nodes", nodes), dtype=complex).ravel()
    if nodes.size == 0:
        raise ValueError("at least one node is required")
    if M is None:
        if symmetry is None:
            raise ValueError("either M or a symmetry class is required")
        M = default_parameter(symmetry, m or _class_dim(symmetry))
    M = np.atleast_2d(np.array(M, dtype=complex))
    if M.shape[0] != M.shape[1]:
        raise ValueError(f"M must be square, got {M.shape}")
    if symmetry is not None:
        res = class_residual(M, symmetry)
        if res > CLASS_TOL:
            raise ConstraintError(f"M violates the {symmetry.tag} constraint", res)
    if normalize:
        nrm = np.linalg.norm(M, 2)
        if nrm == 0:
            raise ValueError("cannot normalize M = 0")
        M = M / nrm
    M.flags.writeable = False
    nodes = nodes.copy()
    nodes.flags.writeable = False
    g = scalar_factor(nodes)
    expansion = MatrixPolynomial(g[:, None, None] * M[None, :, :])
    return NeutralPolynomial(nodes=nodes, M=M, expansion=expansion, normalized=normalize)


def psi_on_axis(psi: NeutralPolynomial, omega) -> np.ndarray:
    """Psi(i omega) = M prod_j |x_j - i omega|^2, without expanding the polynomial."""
    w = axis_weight(psi.nodes, omega)
    return np.multiply.outer(w, psi.M)
