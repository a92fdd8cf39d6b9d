"""End-to-end recipe: feasibility -> reduction -> P -> Psi -> beta_hat."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .betasolver import InterpolantFamily, beta_hat_nugpe, beta_hat_refined, gpe_family
from .errors import InfeasibleDataError
from .grid import GridSpec
from .interpolator import (
    InterpolationProblem,
    ReducedData,
    Violation,
    check_feasible,
    interpolation_residuals,
    reduce_data,
    solve_structured,
)
from .neutral import build_neutral
from .polycore import mcmillan_degree
from .symmetry import coefficient_residual


@dataclass(frozen=True, eq=False)
class Solution:
    problem: InterpolationProblem
    reduced: ReducedData
    family: InterpolantFamily
    violations: list = field(default_factory=list)

    def beta_for_check(self) -> float:
        """A beta inside the admissible set: beta_hat itself, nudged up in the strict nu-GPE case."""
        b = self.family.beta_hat
        if self.family.mode == "nugpe":
            return b * (1 + 1e-6) if b > 0 else 1e-6
        return b

    def diagnostics(self) -> dict:
        F = self.family.at(self.beta_for_check())
        direct, mirror = interpolation_residuals(F, self.problem)
        return {
            "feasibility": [violation_to_dict(v) for v in self.violations],
            "reduction": {
                "kept_indices": list(self.reduced.kept_indices),
                "source": [[r, bool(mir)] for r, mir in self.reduced.source],
            },
            "residuals": {
                "beta": self.beta_for_check(),
                "max_node_residual": float(np.max(direct)),
                "max_mirror_residual": float(np.max(mirror)),
                "coefficient_symmetry_P": coefficient_residual(self.family.P, self.problem.symmetry),
            },
        }

    def degrees(self, beta=None) -> dict:
        b = self.beta_for_check() if beta is None else beta
        return {
            "mcmillan_degree_P": mcmillan_degree(self.family.P),
            "mcmillan_degree_F_at": {"beta": b, "degree": mcmillan_degree(self.family.at(b))},
        }


def violation_to_dict(v: Violation) -> dict:
    return {"kind": v.kind, "j": v.j, "k": v.k, "residual": v.residual}


def interpolate(
    problem: InterpolationProblem,
    M=None,
    grid: GridSpec | None = None,
    refine: bool = True,
    T=None,
    M_r=None,
    M_rest=None,
) -> Solution:
    """Run the full recipe for the problem's symmetry class.

    GPE uses the block refinement unless ``refine`` is False (then M, default
    I, must be positive definite). nu-GPE uses R from the symmetry class.
    Other classes return a "structural" family where every real beta works.
    """
    violations = check_feasible(problem)
    if violations:
        raise InfeasibleDataError(violations)
    reduced = reduce_data(problem, check=False)
    sym = problem.symmetry
    A, B = sym.ab(problem.m)
    P = solve_structured(reduced, A, B)

    if sym.tag == "gpe":
        if refine and M is None:
            _, fam = beta_hat_refined(P, reduced, M_r=M_r, T=T, M_rest=M_rest, grid=grid)
        else:
            psi = build_neutral(reduced, M if M is not None else np.eye(problem.m), sym, normalize=True)
            fam = gpe_family(P, psi, grid)
    elif sym.tag == "nugpe":
        _, fam = beta_hat_nugpe(P, reduced, R=sym.R, nu=sym.nu, grid=grid)
    else:
        psi = build_neutral(reduced, M, sym, normalize=True)
        fam = InterpolantFamily(P=P, psi=psi, beta_hat=0.0, mode="structural")
    return Solution(problem=problem, reduced=reduced, family=fam, violations=violations)
