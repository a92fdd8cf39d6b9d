"""Solve the shipped example problems and print a short report for each.

    python scripts/run_worked_examples.py [--grid-points N] [--json out.json]
"""
from __future__ import annotations

import argparse
import json
from pathlib import Path

from structinterp import GridSpec, interpolate, mcmillan_degree, solve_unstructured
from structinterp.fileio import load, parse_problem

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"
EXAMPLES = ("example_6_1", "example_7_1", "example_7_2", "example_7_2_nugpe")


def fmt_coeffs(P):
    if P.m == 1:
        return "[" + ", ".join(f"{c.real:.12g}" for c in P.coeffs[:, 0, 0]) + "]"
    return f"{P.m}x{P.m}, degree {P.degree}"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid-points", type=int, default=4096)
    ap.add_argument("--json", default=None, help="also write the rows to this file")
    args = ap.parse_args(argv)
    grid = GridSpec(points=args.grid_points)
    rows = []

    prob, _ = parse_problem(load(FIXTURES / "example_1_1.json"))
    P = solve_unstructured(prob)
    rows.append({"example": "example_1_1 (unstructured)", "P": fmt_coeffs(P)})

    for name in EXAMPLES:
        prob, _ = parse_problem(load(FIXTURES / f"{name}.json"))
        fam = interpolate(prob, grid=grid).family
        row = {
            "example": name,
            "P": fmt_coeffs(fam.P),
            "mode": fam.mode,
            "beta_hat": fam.beta_hat,
            "arg_omega": fam.certificate.arg_omega if fam.certificate else None,
            "mcmillan_P": mcmillan_degree(fam.P),
            "mcmillan_F(2)": mcmillan_degree(fam.at(2.0)),
        }
        if fam.refinement is not None:
            row["r"] = fam.refinement.r
        rows.append(row)

    for row in rows:
        print("  ".join(f"{k}={v}" for k, v in row.items()))
    if args.json:
        Path(args.json).write_text(json.dumps(rows, indent=1))


if __name__ == "__main__":
    main()
