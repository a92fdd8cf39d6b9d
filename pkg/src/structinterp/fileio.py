"""JSON problem / polynomial / result files.

Complex numbers are always written as {"re": .., "im": ..} objects; matrices
are row-major lists of rows. Reading also accepts bare real numbers.
"""
from __future__ import annotations

import json
import math

import numpy as np

from .betasolver import Certificate, InterpolantFamily, Refinement
from .errors import StructInterpError
from .grid import GridSpec
from .interpolator import InterpolationProblem
from .neutral import build_neutral
from .polycore import MatrixPolynomial
from .symmetry import SymmetryClass

SCHEMA_VERSION = 1


class ParseError(StructInterpError, ValueError):
    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


# ---------------------------------------------------------------- encoding


def enc_complex(z) -> dict:
    z = complex(z)
    return {"re": float(z.real), "im": float(z.imag)}


def enc_matrix(X) -> list:
    X = np.atleast_2d(np.asarray(X, dtype=complex))
    return [[enc_complex(v) for v in row] for row in X]


def enc_coeffs(F: MatrixPolynomial) -> list:
    return [enc_matrix(C) for C in F.coeffs]


def enc_symmetry(sym: SymmetryClass) -> dict:
    out = {"class": sym.tag}
    if sym.tag == "jeven":
        out["J"] = enc_matrix(sym.J)
    elif sym.tag == "general_ab":
        out["A"] = enc_matrix(sym.A)
        out["B"] = enc_matrix(sym.B)
    elif sym.tag == "nugpe":
        out["nu"] = int(sym.nu)
        if sym.R is not None:
            out["R"] = enc_matrix(sym.R)
    return out


def _num(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def dumps(doc) -> str:
    """Deterministic JSON text (sorted keys, shortest round-trip floats)."""
    return json.dumps(doc, indent=1, sort_keys=True, allow_nan=False) + "\n"


# ---------------------------------------------------------------- decoding


class _Reader:
    """Collects field-path diagnostics instead of failing on the first one."""

    def __init__(self):
        self.errors = []

    def fail(self, path, msg):
        self.errors.append(f"{path}: {msg}")

    def complex(self, v, path):
        if isinstance(v, bool):
            self.fail(path, "expected a number or {re, im}")
            return 0j
        if isinstance(v, (int, float)):
            return complex(v)
        if isinstance(v, dict) and set(v) <= {"re", "im"} and "re" in v:
            re, im = v.get("re"), v.get("im", 0.0)
            if all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in (re, im)):
                z = complex(re, im)
                if math.isfinite(z.real) and math.isfinite(z.imag):
                    return z
        self.fail(path, f"expected a finite number or {{re, im}}, got {v!r}")
        return 0j

    def matrix(self, v, path, m=None):
        if not isinstance(v, list) or not v or not all(isinstance(r, list) for r in v):
            self.fail(path, "expected a non-empty list of rows")
            return None
        rows = len(v)
        if any(len(r) != rows for r in v):
            self.fail(path, f"matrix must be square, got row lengths {[len(r) for r in v]}")
            return None
        if m is not None and rows != m:
            self.fail(path, f"expected a {m}x{m} matrix, got {rows}x{rows}")
            return None
        return np.array([[self.complex(x, f"{path}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(v)])

    def coeffs(self, v, path, m=None):
        if not isinstance(v, list) or not v:
            self.fail(path, "expected a non-empty list of coefficient matrices")
            return None
        mats = [self.matrix(c, f"{path}[{k}]", m) for k, c in enumerate(v)]
        if any(x is None for x in mats):
            return None
        if len({x.shape for x in mats}) != 1:
            self.fail(path, "coefficient matrices differ in size")
            return None
        return np.array(mats)

    def check_version(self, doc):
        if doc.get("schema_version") != SCHEMA_VERSION:
            self.fail("schema_version", f"expected {SCHEMA_VERSION}, got {doc.get('schema_version')!r}")

    def raise_if_failed(self):
        if self.errors:
            raise ParseError(self.errors)


def loads(text: str, source="<input>"):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError([f"{source}:{e.lineno}:{e.colno}: {e.msg}"]) from None
    if not isinstance(doc, dict):
        raise ParseError([f"{source}: top level must be an object"])
    return doc


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), str(path))


def parse_symmetry(v, m, rd: _Reader, path="symmetry"):
    if not isinstance(v, dict) or "class" not in v:
        rd.fail(path, "expected an object with a 'class' field")
        return None
    tag = v["class"]
    before = len(rd.errors)
    kw = {}
    for key in ("J", "A", "B", "R"):
        if key in v:
            kw[key] = rd.matrix(v[key], f"{path}.{key}", m)
    if "nu" in v:
        if not isinstance(v["nu"], int) or isinstance(v["nu"], bool):
            rd.fail(f"{path}.nu", "expected an integer")
        else:
            kw["nu"] = v["nu"]
    if len(rd.errors) > before:
        return None
    try:
        sym = SymmetryClass(tag, **kw)
        sym.validate_dim(m)
        return sym
    except ValueError as e:
        rd.fail(path, str(e))
        return None


def parse_problem(doc):
    """Problem document -> (InterpolationProblem, extras dict)."""
    rd = _Reader()
    rd.check_version(doc)
    m = doc.get("m")
    nodes = doc.get("nodes")
    values = doc.get("values")
    broken = False
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        rd.fail("m", "expected a positive integer")
        broken = True
    if not isinstance(nodes, list) or not nodes:
        rd.fail("nodes", "expected a non-empty list")
        broken = True
    if not isinstance(values, list) or not values:
        rd.fail("values", "expected a non-empty list")
        broken = True
    if broken:
        rd.raise_if_failed()
    if len(nodes) != len(values):
        rd.fail("values", f"{len(nodes)} nodes but {len(values)} values")
    x = [rd.complex(v, f"nodes[{j}]") for j, v in enumerate(nodes)]
    Y = [rd.matrix(v, f"values[{j}]", m) for j, v in enumerate(values)]
    sym = parse_symmetry(doc.get("symmetry", {"class": "even"}), m, rd)
    extras = {}
    for key, size in (("M", m), ("T", m), ("M_r", None), ("M_rest", None)):
        if doc.get(key) is not None:
            extras[key] = rd.matrix(doc[key], key, size)
    opts = doc.get("options", {}) or {}
    if not isinstance(opts, dict):
        rd.fail("options", "expected an object")
        opts = {}
    known = {"omega_max", "grid_points", "exclusion_radius", "tol", "norm", "refine"}
    for key in sorted(set(opts) - known):
        rd.fail(f"options.{key}", "unknown option")
    extras["options"] = opts
    rd.raise_if_failed()
    try:
        prob = InterpolationProblem(nodes=np.array(x), values=np.array(Y), symmetry=sym)
    except ValueError as e:
        raise ParseError([str(e)]) from None
    return prob, extras


def problem_to_dict(problem: InterpolationProblem, **extras) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "problem",
        "m": problem.m,
        "nodes": [enc_complex(x) for x in problem.nodes],
        "values": [enc_matrix(Y) for Y in problem.values],
        "symmetry": enc_symmetry(problem.symmetry),
    }
    for key in ("M", "T", "M_r", "M_rest"):
        if extras.get(key) is not None:
            doc[key] = enc_matrix(extras[key])
    doc["options"] = dict(extras.get("options", {}))
    return doc


def polynomial_to_dict(F: MatrixPolynomial) -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": "polynomial", "m": F.m, "coeffs": enc_coeffs(F)}


def parse_polynomial(doc) -> MatrixPolynomial:
    rd = _Reader()
    rd.check_version(doc)
    c = rd.coeffs(doc.get("coeffs"), "coeffs", doc.get("m"))
    rd.raise_if_failed()
    return MatrixPolynomial(c)


# ---------------------------------------------------------------- results


def certificate_to_dict(cert: Certificate | None):
    if cert is None:
        return None
    return {
        "objective": cert.objective,
        "arg_omega": cert.arg_omega,
        "value": cert.value,
        "omega_lin": cert.omega_lin,
        "omega_max": cert.omega_max,
        "points": cert.points,
        "exclusion_radius": cert.exclusion_radius,
        "exclusions": [[c, r] for c, r in cert.exclusions],
        "grid_points": cert.grid_points,
        "at_exclusion_boundary": cert.at_exclusion_boundary,
    }


def certificate_from_dict(d):
    if d is None:
        return None
    d = dict(d)
    d["exclusions"] = tuple((float(c), float(r)) for c, r in d["exclusions"])
    return Certificate(**d)


def family_to_dict(family: InterpolantFamily, symmetry: SymmetryClass, diagnostics=None, degrees=None) -> dict:
    admissible = {"gpe": ">=", "gpe_refined": ">=", "nugpe": ">", "structural": "any"}[family.mode]
    ref = family.refinement
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "result",
        "m": family.P.m,
        "symmetry": enc_symmetry(symmetry),
        "mode": family.mode,
        "nu": family.nu,
        "beta_hat": family.beta_hat,
        "admissible": admissible,
        "P_coeffs": enc_coeffs(family.P),
        "psi_nodes": [enc_complex(x) for x in family.psi.nodes],
        "psi_M": enc_matrix(family.psi.M),
        "psi_coeffs": enc_coeffs(family.psi.expansion),
        "certificate": certificate_to_dict(family.certificate),
        "refinement": None if ref is None else {"T": enc_matrix(ref.T), "r": ref.r, "order": list(ref.order)},
    }
    if degrees:
        doc.update(degrees)
    doc["diagnostics"] = diagnostics or {}
    return doc


def family_from_dict(doc) -> tuple[InterpolantFamily, SymmetryClass]:
    rd = _Reader()
    rd.check_version(doc)
    if doc.get("kind") != "result":
        rd.fail("kind", "expected 'result'")
        rd.raise_if_failed()
    m = doc.get("m")
    P = rd.coeffs(doc.get("P_coeffs"), "P_coeffs", m)
    M = rd.matrix(doc.get("psi_M"), "psi_M", m)
    nodes = [rd.complex(v, f"psi_nodes[{j}]") for j, v in enumerate(doc.get("psi_nodes") or [])]
    sym = parse_symmetry(doc.get("symmetry"), m, rd)
    rd.raise_if_failed()
    psi = build_neutral(np.array(nodes), M)
    ref = doc.get("refinement")
    refinement = None
    if ref is not None:
        refinement = Refinement(T=rd.matrix(ref["T"], "refinement.T", m), r=int(ref["r"]), order=tuple(ref["order"]))
    fam = InterpolantFamily(
        P=MatrixPolynomial(P),
        psi=psi,
        beta_hat=float(doc["beta_hat"]),
        mode=doc["mode"],
        certificate=certificate_from_dict(doc.get("certificate")),
        refinement=refinement,
        nu=doc.get("nu"),
    )
    return fam, sym


def grid_from_options(opts: dict) -> GridSpec:
    return GridSpec(
        omega_max=_num(opts.get("omega_max")),
        points=int(opts.get("grid_points") or 4096),
        exclusion_radius=_num(opts.get("exclusion_radius")),
    )
