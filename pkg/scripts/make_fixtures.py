"""Regenerate the JSON fixtures in fixtures/ from the worked examples."""
from __future__ import annotations

import argparse
from pathlib import Path

import numpy as np

from structinterp import InterpolationProblem, MatrixPolynomial, SymmetryClass
from structinterp.fileio import dumps, polynomial_to_dict, problem_to_dict


def problems():
    yield "example_1_1", InterpolationProblem([1, 2, 3], [18, 75, 50], SymmetryClass.even())
    yield "example_6_1", InterpolationProblem([1, 2, 3], [18, 75, 50], SymmetryClass.gpe())
    yield "example_7_1", InterpolationProblem([1, 2, 3], [4, 1, -4], SymmetryClass.gpe())
    Y = np.array([np.diag([-35, 9]), np.diag([-20, 0]), np.diag([45, 25])])
    yield "example_7_2", InterpolationProblem([1, 2, 3], Y, SymmetryClass.gpe())
    yield "example_7_2_nugpe", InterpolationProblem([1, 2, 3], Y, SymmetryClass.nugpe(1))
    # same nodes, inconsistent value on the mirror image of node 1
    yield "infeasible_mirror", InterpolationProblem([1, -1], [2, 3], SymmetryClass.even())


def polynomials():
    s = MatrixPolynomial.scalar
    # ascending coefficients
    yield "poly_f1", s([-121, 180, -41])
    yield "poly_p6_1", s([-13, 0, 34, 0, -3])
    # P + 0.5 * (1 - s^2)(4 - s^2)(9 - s^2)
    yield "poly_f6_1_half", s([5, 0, 9.5, 0, 4, 0, -0.5])
    yield "poly_p7_2", MatrixPolynomial.diag([-36, 0, 0, 0, 1], [16, 0, -8, 0, 1])
    yield "poly_identity_3", MatrixPolynomial.constant(np.eye(3))
    yield "poly_zero", MatrixPolynomial.zeros(1)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "fixtures"))
    out = Path(ap.parse_args(argv).out)
    out.mkdir(parents=True, exist_ok=True)
    for name, prob in problems():
        (out / f"{name}.json").write_text(dumps(problem_to_dict(prob)))
    for name, F in polynomials():
        (out / f"{name}.json").write_text(dumps(polynomial_to_dict(F)))
    print(f"wrote fixtures to {out}")


if __name__ == "__main__":
    main()
