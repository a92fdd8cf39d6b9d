"""Command-line front end.

Exit codes: 0 ok, 1 parse/usage error, 2 infeasible data or failed
verification, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import fileio
from .errors import ConstraintError, IllConditionedError, InfeasibleDataError, SingularMatrixError
from .grid import GridSpec
from .interpolator import check_feasible, reduce_data
from .pipeline import violation_to_dict, interpolate
from .polycore import evaluate, hash_adjoint, mcmillan_degree
from .symmetry import (
    SymmetryClass,
    coefficient_residual,
    gpe_sweep,
    nugpe_sweep,
    structure_sweep,
)

EXIT_OK, EXIT_PARSE, EXIT_INFEASIBLE, EXIT_NUMERIC = 0, 1, 2, 3


def fmt(x) -> str:
    return f"{float(x):.17g}"


def fmt_complex(z) -> str:
    z = complex(z)
    return f"{z.real:.17g}{z.imag:+.17g}j"


class CliError(Exception):
    def __init__(self, code, message):
        self.code = code
        super().__init__(message)


def _emit(args, doc):
    text = fileio.dumps(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _say(args, line):
    if not args.quiet:
        print(line, file=sys.stderr if not args.output and args.cmd in ("interpolate", "reduce") else sys.stdout)


def _grid_from_args(args, opts=None) -> GridSpec:
    opts = dict(opts or {})
    if args.omega_max is not None:
        opts["omega_max"] = args.omega_max
    if args.grid_points is not None:
        opts["grid_points"] = args.grid_points
    if args.exclusion_radius is not None:
        opts["exclusion_radius"] = args.exclusion_radius
    return fileio.grid_from_options(opts)


def _load_polynomial_like(path, beta):
    """Polynomial file, or result file evaluated at beta (P itself when beta is None)."""
    doc = fileio.load(path)
    kind = doc.get("kind", "polynomial")
    if kind == "result":
        fam, sym = fileio.family_from_dict(doc)
        return (fam.P if beta is None else fam.at(beta)), fam, sym
    if kind != "polynomial":
        raise fileio.ParseError([f"kind: expected 'polynomial' or 'result', got {kind!r}"])
    if beta is not None:
        raise CliError(EXIT_PARSE, "--beta needs a result file (it scales the stored neutral polynomial)")
    return fileio.parse_polynomial(doc), None, None


# ---------------------------------------------------------------- commands


def cmd_interpolate(args) -> int:
    prob, extras = fileio.parse_problem(fileio.load(args.problem))
    opts = extras["options"]
    grid = _grid_from_args(args, opts)
    norm = args.norm or opts.get("norm", "spectral")
    if norm != "spectral":
        raise CliError(EXIT_PARSE, f"unsupported norm {norm!r}")
    try:
        sol = interpolate(
            prob,
            M=extras.get("M"),
            grid=grid,
            refine=bool(opts.get("refine", True)),
            T=extras.get("T"),
            M_r=extras.get("M_r"),
            M_rest=extras.get("M_rest"),
        )
    except InfeasibleDataError as e:
        _emit(args, {"schema_version": fileio.SCHEMA_VERSION, "kind": "infeasible",
                     "violations": [violation_to_dict(v) for v in e.violations]})
        for v in e.violations:
            print(f"infeasible: {v}", file=sys.stderr)
        return EXIT_INFEASIBLE
    fam = sol.family
    doc = fileio.family_to_dict(fam, prob.symmetry, sol.diagnostics(), sol.degrees(args.beta))
    _emit(args, doc)
    _say(args, f"mode: {fam.mode}")
    _say(args, f"beta_hat: {fmt(fam.beta_hat)}")
    if fam.refinement is not None:
        _say(args, f"refinement r: {fam.refinement.r}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    prob, _ = fileio.parse_problem(fileio.load(args.problem))
    bad = check_feasible(prob)
    if bad:
        _emit(args, {"schema_version": fileio.SCHEMA_VERSION, "kind": "infeasible",
                     "violations": [violation_to_dict(v) for v in bad]})
        return EXIT_INFEASIBLE
    red = reduce_data(prob, check=False)
    _emit(args, {
        "schema_version": fileio.SCHEMA_VERSION,
        "kind": "reduced",
        "n": red.n,
        "nodes": [fileio.enc_complex(x) for x in red.nodes],
        "kept_indices": list(red.kept_indices),
        "source": [[r, bool(mir)] for r, mir in red.source],
    })
    return EXIT_OK


def _verify_class(args, file_sym):
    tag = args.cls
    if tag in ("jeven", "general_ab") or (tag == "nugpe" and args.nu is None):
        if file_sym is None or file_sym.tag != tag:
            raise CliError(EXIT_PARSE, f"class {tag} needs its parameters; pass a result file of that class"
                           + (" or --nu" if tag == "nugpe" else ""))
        return file_sym
    if tag == "nugpe":
        return SymmetryClass.nugpe(args.nu)
    return SymmetryClass(tag)


def cmd_verify(args) -> int:
    beta = args.beta
    doc = fileio.load(args.polynomial)
    fam = None
    if doc.get("kind") == "result" and beta is None:
        fam, _ = fileio.family_from_dict(doc)
        beta = fam.beta_hat if fam.mode != "nugpe" else (fam.beta_hat * (1 + 1e-6) if fam.beta_hat > 0 else 1e-6)
    F, fam2, file_sym = _load_polynomial_like(args.polynomial, beta)
    fam = fam or fam2
    sym = _verify_class(args, file_sym)
    sym.validate_dim(F.m)
    exclusions = ()
    if fam is not None and fam.certificate is not None and args.omega_max is None and args.grid_points is None:
        grid = fam.sweep_grid()
        exclusions = fam.exclusions()
    else:
        grid = _grid_from_args(args)
    tol = args.tol
    coef = coefficient_residual(F, sym)
    if sym.tag == "gpe":
        rep = gpe_sweep(F, grid, tol, exclusions)
    elif sym.tag == "nugpe":
        rep = nugpe_sweep(F, sym.nu, grid, tol, exclusions)
    else:
        A, B = sym.ab(F.m)
        rep = structure_sweep(F, A, B, grid, tol)
    verdict = bool(rep.verdict and coef <= tol)
    out = {
        "class": sym.tag,
        "beta": beta,
        "verdict": verdict,
        "sweep_verdict": rep.verdict,
        "worst_omega": rep.worst_omega,
        "worst_value": rep.worst_value,
        "grid_points": int(rep.grid.size),
        "excluded": rep.excluded,
        "coefficient_residual": coef,
    }
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(fileio.dumps(out))
    if not args.quiet:
        print(f"verdict: {str(verdict).lower()}")
        print(f"worst_omega: {fmt(rep.worst_omega)}")
        print(f"worst_value: {fmt(rep.worst_value)}")
        print(f"coefficient_residual: {fmt(coef)}")
        print(f"grid_points: {rep.grid.size}")
    return EXIT_OK if verdict else EXIT_INFEASIBLE


def cmd_degree(args) -> int:
    F, _, _ = _load_polynomial_like(args.polynomial, args.beta)
    d = mcmillan_degree(F, args.rank_tol)
    print(d)
    return EXIT_OK


def cmd_eval(args) -> int:
    F, _, _ = _load_polynomial_like(args.polynomial, args.beta)
    try:
        s = complex(args.s.replace(" ", ""))
    except ValueError:
        raise CliError(EXIT_PARSE, f"cannot parse point {args.s!r}; use e.g. 2, -1.5, 1+2j") from None
    G = hash_adjoint(F) if args.adjoint else F
    val = evaluate(G, s)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(fileio.dumps({"s": fileio.enc_complex(s), "value": fileio.enc_matrix(val)}))
    if not args.quiet:
        for row in val:
            print(" ".join(fmt_complex(z) for z in row))
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9, help="sweep / residual tolerance")
    common.add_argument("--omega-max", type=float, default=None)
    common.add_argument("--grid-points", type=int, default=None)
    common.add_argument("--exclusion-radius", type=float, default=None)
    common.add_argument("--beta", type=float, default=None, help="evaluate F = P + beta*Psi from a result file")
    common.add_argument("--norm", choices=["spectral"], default=None)
    common.add_argument("--output", "-o", default=None)
    common.add_argument("--quiet", "-q", action="store_true")

    p = argparse.ArgumentParser(prog="structinterp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("interpolate", parents=[common], help="solve a problem file")
    s.add_argument("problem")
    s.set_defaults(func=cmd_interpolate)

    s = sub.add_parser("verify", parents=[common], help="check a polynomial against a symmetry class")
    s.add_argument("polynomial")
    s.add_argument("--class", dest="cls", required=True,
                   choices=["even", "odd", "jeven", "general_ab", "gpe", "nugpe"])
    s.add_argument("--nu", type=int, default=None)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("degree", parents=[common], help="McMillan degree")
    s.add_argument("polynomial")
    s.add_argument("--rank-tol", type=float, default=1e-9)
    s.set_defaults(func=cmd_degree)

    s = sub.add_parser("eval", parents=[common], help="evaluate F(s)")
    s.add_argument("polynomial")
    s.add_argument("s")
    s.add_argument("--adjoint", action="store_true", help="evaluate F^#(s) = F(-s*)^* instead")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("reduce", parents=[common], help="feasibility check and reduced node set")
    s.add_argument("problem")
    s.set_defaults(func=cmd_reduce)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code else EXIT_OK
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except fileio.ParseError as e:
        for line in e.errors:
            print(f"error: {line}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except InfeasibleDataError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (IllConditionedError, np.linalg.LinAlgError) as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConstraintError, SingularMatrixError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
