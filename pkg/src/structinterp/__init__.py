"""Structured matrix polynomial interpolation on the imaginary axis.

F = P + beta * Psi, where P is a minimal-degree structured interpolant, Psi a
neutral polynomial vanishing at the nodes and beta >= beta_hat puts F in the
target class (Even, Odd, J-Even, GPE, nu-GPE).
"""
from .betasolver import (
    Certificate,
    InterpolantFamily,
    assemble,
    beta_hat_gpe,
    beta_hat_nugpe,
    beta_hat_refined,
    block_diagonalize,
    gpe_family,
)
from .errors import (
    ConstraintError,
    IllConditionedError,
    InfeasibleDataError,
    SingularMatrixError,
    StructInterpError,
)
from .grid import GridSpec
from .interpolator import (
    InterpolationProblem,
    ReducedData,
    check_feasible,
    reduce_data,
    solve_structured,
    solve_unstructured,
)
from .neutral import NeutralPolynomial, build_neutral, psi_on_axis
from .pipeline import Solution, interpolate
from .polycore import MatrixPolynomial, evaluate, hash_adjoint, mcmillan_degree, reverse
from .symmetry import (
    SweepReport,
    SymmetryClass,
    gpe_sweep,
    is_even,
    is_odd,
    nugpe_sweep,
    satisfies_general_ab,
)

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "ConstraintError",
    "GridSpec",
    "IllConditionedError",
    "InfeasibleDataError",
    "InterpolantFamily",
    "InterpolationProblem",
    "MatrixPolynomial",
    "NeutralPolynomial",
    "ReducedData",
    "SingularMatrixError",
    "Solution",
    "StructInterpError",
    "SweepReport",
    "SymmetryClass",
    "assemble",
    "beta_hat_gpe",
    "beta_hat_nugpe",
    "beta_hat_refined",
    "block_diagonalize",
    "build_neutral",
    "check_feasible",
    "evaluate",
    "gpe_family",
    "gpe_sweep",
    "hash_adjoint",
    "interpolate",
    "is_even",
    "is_odd",
    "mcmillan_degree",
    "nugpe_sweep",
    "psi_on_axis",
    "reduce_data",
    "reverse",
    "satisfies_general_ab",
    "solve_structured",
    "solve_unstructured",
]
