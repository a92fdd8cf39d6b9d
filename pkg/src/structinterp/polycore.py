"""Complex matrix polynomials F(s) = sum_k C_k s^k.

Coefficients are stored densely as a (q+1, m, m) complex array. Objects are
immutable after construction; every operation returns a new polynomial.
"""
from __future__ import annotations

import cmath
import numbers

import numpy as np

TRIM_RTOL = 1e-12
RANK_RTOL = 1e-9


def as_point(s) -> complex:
    """Validate a complex evaluation point (finite, numeric)."""
    if not isinstance(s, numbers.Number):
        raise TypeError(f"expected a number, got {type(s).__name__}")
    z = complex(s)
    if not (cmath.isfinite(z)):
        raise ValueError(f"non-finite point {z!r}")
    return z


class MatrixPolynomial:
    __slots__ = ("_coeffs",)

    def __init__(self, coeffs, normalize: bool = True):
        c = np.array(coeffs, dtype=complex)
        if c.ndim == 1:
            # scalar polynomial given as an ascending coefficient list
            c = c.reshape(-1, 1, 1)
        if c.ndim != 3 or c.shape[1] != c.shape[2] or c.shape[0] == 0 or c.shape[1] == 0:
            raise ValueError(f"coefficients must have shape (q+1, m, m), got {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        if normalize:
            c = _trim(c)
        c.flags.writeable = False
        self._coeffs = c

    @classmethod
    def constant(cls, C0) -> MatrixPolynomial:
        C0 = np.atleast_2d(np.asarray(C0, dtype=complex))
        return cls(C0[None, :, :])

    @classmethod
    def zeros(cls, m: int) -> MatrixPolynomial:
        return cls(np.zeros((1, m, m), dtype=complex))

    @classmethod
    def scalar(cls, ascending) -> MatrixPolynomial:
        """1x1 polynomial from ascending coefficients c_0, c_1, ..."""
        return cls(np.asarray(ascending, dtype=complex).reshape(-1, 1, 1))

    @classmethod
    def diag(cls, *entries) -> MatrixPolynomial:
        """Diagonal polynomial from per-entry ascending coefficient lists."""
        q = max(len(e) for e in entries)
        m = len(entries)
        c = np.zeros((q, m, m), dtype=complex)
        for i, e in enumerate(entries):
            c[: len(e), i, i] = e
        return cls(c)

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def m(self) -> int:
        return self._coeffs.shape[1]

    @property
    def degree(self) -> int:
        """Formal degree q (number of coefficient blocks minus one)."""
        return self._coeffs.shape[0] - 1

    def is_zero(self) -> bool:
        return not np.any(self._coeffs)

    def __call__(self, s):
        return evaluate(self, s)

    def __add__(self, other):
        if not isinstance(other, MatrixPolynomial):
            return NotImplemented
        if other.m != self.m:
            raise ValueError(f"dimension mismatch: {self.m} vs {other.m}")
        q = max(self.degree, other.degree) + 1
        c = np.zeros((q, self.m, self.m), dtype=complex)
        c[: self.degree + 1] += self._coeffs
        c[: other.degree + 1] += other._coeffs
        return MatrixPolynomial(c)

    def __neg__(self):
        return MatrixPolynomial(-self._coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if not isinstance(scalar, numbers.Number):
            return NotImplemented
        return MatrixPolynomial(complex(scalar) * self._coeffs)

    __rmul__ = __mul__

    def congruence(self, T) -> MatrixPolynomial:
        """Return T F(s) T^* coefficientwise."""
        T = np.asarray(T, dtype=complex)
        return MatrixPolynomial(T @ self._coeffs @ T.conj().T)

    def allclose(self, other, atol=1e-9) -> bool:
        a, b = self._coeffs, other._coeffs
        q = max(a.shape[0], b.shape[0])
        if a.shape[1:] != b.shape[1:]:
            return False
        pa = np.zeros((q,) + a.shape[1:], dtype=complex)
        pb = np.zeros_like(pa)
        pa[: a.shape[0]] = a
        pb[: b.shape[0]] = b
        return bool(np.max(np.abs(pa - pb)) <= atol)

    def __repr__(self):
        return f"MatrixPolynomial(m={self.m}, degree={self.degree})"


def _trim(c: np.ndarray) -> np.ndarray:
    scale = np.max(np.abs(c)) if c.size else 0.0
    if scale == 0.0:
        return np.zeros((1,) + c.shape[1:], dtype=complex)
    cut = TRIM_RTOL * scale
    q = c.shape[0]
    while q > 1 and np.max(np.abs(c[q - 1])) <= cut:
        q -= 1
    return c[:q].copy()


def evaluate(F: MatrixPolynomial, s) -> np.ndarray:
    """Horner evaluation of F at a single complex point."""
    s = as_point(s)
    c = F.coeffs
    out = c[-1].copy()
    for k in range(c.shape[0] - 2, -1, -1):
        out = out * s + c[k]
    return out


def evaluate_many(F: MatrixPolynomial, points) -> np.ndarray:
    """Vectorised Horner evaluation; returns an array of shape (len(points), m, m)."""
    s = np.asarray(points, dtype=complex).reshape(-1, 1, 1)
    c = F.coeffs
    out = np.broadcast_to(c[-1], (s.shape[0],) + c.shape[1:]).copy()
    for k in range(c.shape[0] - 2, -1, -1):
        out = out * s + c[k]
    return out


def hash_adjoint(F: MatrixPolynomial) -> MatrixPolynomial:
    """F^#(s) = F(-s*)^*, i.e. coefficients (-1)^k C_k^*."""
    c = F.coeffs
    signs = (-1.0) ** np.arange(c.shape[0])
    return MatrixPolynomial(signs[:, None, None] * np.conj(np.swapaxes(c, 1, 2)))


def reverse(F: MatrixPolynomial) -> MatrixPolynomial:
    """s^q F(1/s): the coefficient sequence read backwards."""
    return MatrixPolynomial(F.coeffs[::-1], normalize=False)


def block_toeplitz(F: MatrixPolynomial) -> np.ndarray:
    """Block upper-triangular Toeplitz matrix with C_q on the diagonal and C_q..C_0 on the top row."""
    c = F.coeffs
    q, m = F.degree, F.m
    T = np.zeros(((q + 1) * m, (q + 1) * m), dtype=complex)
    for i in range(q + 1):
        for j in range(i, q + 1):
            T[i * m:(i + 1) * m, j * m:(j + 1) * m] = c[q - (j - i)]
    return T


def numerical_rank(A: np.ndarray, rtol: float = RANK_RTOL) -> int:
    sv = np.linalg.svd(A, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.sum(sv > rtol * sv[0]))


def mcmillan_degree(F: MatrixPolynomial, rank_tol: float = RANK_RTOL) -> int:
    """McMillan degree as the numerical rank of the block-Toeplitz coefficient matrix.

    The zero polynomial has degree 0 by convention.
    """
    if rank_tol <= 0:
        raise ValueError("rank_tol must be positive")
    F = MatrixPolynomial(F.coeffs)
    if F.is_zero():
        return 0
    return numerical_rank(block_toeplitz(F), rank_tol)
