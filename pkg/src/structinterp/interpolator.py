"""Feasibility, data reduction and the structured Vandermonde solve.

The structured interpolant P satisfies P^#(s) = A P(s) B together with
P(x_j) = Y_j. Imposing the mirrored conditions P(-x_j^*) = (A Y_j B)^* turns
this into an ordinary interpolation problem on the mirror-closed node set,
and the block Vandermonde matrix factors as (scalar Vandermonde) kron I_m,
so each matrix entry is solved against the same scalar system.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .errors import IllConditionedError, InfeasibleDataError
from .polycore import MatrixPolynomial, as_point, evaluate_many
from .symmetry import SymmetryClass, check_nonsingular, inertia

VANDERMONDE_COND_LIMIT = 1e12
VALUE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class InterpolationProblem:
    """Nodes x_j, values Y_j = F(x_j) and the symmetry class F must carry.

    Repeated nodes are allowed here; check_feasible decides whether they are
    consistent and reduce_data drops them.
    """

    nodes: np.ndarray
    values: np.ndarray
    symmetry: SymmetryClass = field(default_factory=SymmetryClass.even)
    match_tol: float | None = None
    value_tol: float = VALUE_TOL

    def __post_init__(self):
        nodes = np.array([as_point(x) for x in np.atleast_1d(self.nodes)], dtype=complex)
        values = np.array(self.values, dtype=complex)
        if values.ndim == 1:
            values = values.reshape(-1, 1, 1)
        if nodes.size == 0:
            raise ValueError("at least one interpolation node is required")
        if values.ndim != 3 or values.shape[1] != values.shape[2]:
            raise ValueError(f"values must have shape (p, m, m), got {values.shape}")
        if values.shape[0] != nodes.size:
            raise ValueError(f"{nodes.size} nodes but {values.shape[0]} values")
        if not np.all(np.isfinite(values)):
            raise ValueError("values must be finite")
        self.symmetry.validate_dim(values.shape[1])
        nodes.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)
        if self.match_tol is None:
            object.__setattr__(self, "match_tol", 1e-9 * (1 + float(np.max(np.abs(nodes)))))

    @property
    def m(self) -> int:
        return self.values.shape[1]

    @property
    def p(self) -> int:
        return self.nodes.size

    def value_scale(self) -> float:
        return 1.0 + float(np.max(np.linalg.norm(self.values, ord=2, axis=(1, 2))))


@dataclass(frozen=True)
class Violation:
    kind: str  # "duplicate", "mirror", "psd", "inertia"
    j: int
    k: int | None
    residual: float

    def __str__(self):
        where = f"({self.j}, {self.k})" if self.k is not None else f"({self.j})"
        return f"{self.kind} at {where}: residual {self.residual:.3e}"


@dataclass(frozen=True, eq=False)
class ReducedData:
    """Maximal node subset with no duplicates and no mirror (x, -x^*) pairs.

    ``source`` maps every original index to (reduced index, mirrored?).
    """

    nodes: np.ndarray
    values: np.ndarray
    kept_indices: tuple
    source: tuple
    match_tol: float

    @property
    def n(self) -> int:
        return self.nodes.size

    @property
    def m(self) -> int:
        return self.values.shape[1]

    def on_axis(self) -> np.ndarray:
        return np.abs(self.nodes.real) <= self.match_tol


def _mirror_value(Y, A, B):
    return (A @ Y @ B).conj().T


def check_feasible(problem: InterpolationProblem) -> list[Violation]:
    """Every violated data-consistency condition; an empty list means feasible."""
    x, Y = problem.nodes, problem.values
    A, B = problem.symmetry.ab(problem.m)
    tol = problem.match_tol
    vtol = problem.value_tol * problem.value_scale()
    out = []
    for j in range(problem.p):
        for k in range(j, problem.p):
            if k > j and abs(x[j] - x[k]) <= tol:
                r = float(np.linalg.norm(Y[j] - Y[k], 2))
                if r > vtol:
                    out.append(Violation("duplicate", j, k, r))
            if abs(x[j] + np.conj(x[k])) <= tol:
                r = float(np.linalg.norm(Y[j] - _mirror_value(Y[k], A, B), 2))
                if r > vtol:
                    out.append(Violation("mirror", j, None if j == k else k, r))
    sym = problem.symmetry
    if sym.tag in ("gpe", "nugpe"):
        for j in np.flatnonzero(np.abs(x.real) <= tol):
            H = 0.5 * (Y[j] + Y[j].conj().T)
            if sym.tag == "gpe":
                lam = float(np.linalg.eigvalsh(H)[0])
                if lam < -vtol:
                    out.append(Violation("psd", int(j), None, -lam))
            else:
                neg, zero, pos = inertia(H, problem.value_tol)
                if (neg, zero, pos) != (sym.nu, 0, problem.m - sym.nu):
                    out.append(Violation("inertia", int(j), None, float(abs(neg - sym.nu) + zero)))
    return out


def reduce_data(problem: InterpolationProblem, check: bool = True) -> ReducedData:
    """Greedy scan in input order, keeping a node unless it repeats or mirrors a kept one."""
    if check:
        bad = check_feasible(problem)
        if bad:
            raise InfeasibleDataError(bad)
    tol = problem.match_tol
    kept: list[int] = []
    source = []
    for j, xj in enumerate(problem.nodes):
        hit = None
        for r, i in enumerate(kept):
            xi = problem.nodes[i]
            if abs(xj - xi) <= tol:
                hit = (r, False)
                break
            if abs(xj + np.conj(xi)) <= tol:
                hit = (r, True)
                break
        if hit is None:
            kept.append(j)
            hit = (len(kept) - 1, False)
        source.append(hit)
    idx = np.array(kept)
    return ReducedData(
        nodes=problem.nodes[idx].copy(),
        values=problem.values[idx].copy(),
        kept_indices=tuple(kept),
        source=tuple(source),
        match_tol=tol,
    )


def _closest_pair(points):
    best = (np.inf, None)
    for a in range(len(points)):
        for b in range(a + 1, len(points)):
            d = abs(points[a] - points[b])
            if d < best[0]:
                best = (d, (complex(points[a]), complex(points[b])))
    return best[1]


def solve_vandermonde(points, rhs) -> np.ndarray:
    """Solve V c = rhs with V_{jk} = points_j^k; rhs has shape (N, ...).

    Partial-pivoted LU with one step of iterative refinement.
    """
    points = np.asarray(points, dtype=complex)
    N = points.size
    V = np.vander(points, N, increasing=True)
    cond = np.linalg.cond(V)
    if not np.isfinite(cond) or cond > VANDERMONDE_COND_LIMIT:
        raise IllConditionedError(
            f"Vandermonde system is ill-conditioned (cond={cond:.3e}); closest nodes {_closest_pair(points)}",
            cluster=_closest_pair(points),
        )
    b = np.asarray(rhs, dtype=complex).reshape(N, -1)
    lu = sla.lu_factor(V)
    c = sla.lu_solve(lu, b)
    c = c + sla.lu_solve(lu, b - V @ c)
    return c.reshape((N,) + np.shape(rhs)[1:])


def mirrored_conditions(reduced: ReducedData, A, B):
    """Node set x_j, -x_j^* with values Y_j, (A Y_j B)^*; on-axis nodes appear once."""
    pts = list(reduced.nodes)
    vals = list(reduced.values)
    for x, Y, on_axis in zip(reduced.nodes, reduced.values, reduced.on_axis()):
        if on_axis:
            continue
        pts.append(-np.conj(x))
        vals.append(_mirror_value(Y, A, B))
    return np.array(pts), np.array(vals)


def solve_structured(reduced: ReducedData, A=None, B=None) -> MatrixPolynomial:
    """Minimal-degree P with P(x_j) = Y_j and P^# = A P B (degree at most 2n-1)."""
    m = reduced.m
    A = np.eye(m, dtype=complex) if A is None else check_nonsingular(A, "A")
    B = np.eye(m, dtype=complex) if B is None else check_nonsingular(B, "B")
    pts, vals = mirrored_conditions(reduced, A, B)
    return MatrixPolynomial(solve_vandermonde(pts, vals))


def solve_unstructured(problem: InterpolationProblem) -> MatrixPolynomial:
    """Classical interpolant of degree at most p-1 (nodes must be distinct)."""
    x = problem.nodes
    for j in range(x.size):
        for k in range(j + 1, x.size):
            if abs(x[j] - x[k]) <= problem.match_tol:
                raise ValueError(f"nodes {j} and {k} coincide; unstructured solve needs distinct nodes")
    return MatrixPolynomial(solve_vandermonde(x, problem.values))


def interpolation_residuals(P: MatrixPolynomial, problem: InterpolationProblem):
    """Per-node ||P(x_j) - Y_j||_2 and the mirrored residual ||P(-x_j^*) - (A Y_j B)^*||_2."""
    A, B = problem.symmetry.ab(problem.m)
    direct = evaluate_many(P, problem.nodes) - problem.values
    mirror = evaluate_many(P, -np.conj(problem.nodes)) - np.array(
        [_mirror_value(Y, A, B) for Y in problem.values]
    )
    return (
        np.linalg.norm(direct, ord=2, axis=(1, 2)),
        np.linalg.norm(mirror, ord=2, axis=(1, 2)),
    )
