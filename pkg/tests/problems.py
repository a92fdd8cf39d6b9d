"""Random well-posed interpolation problems for property tests."""
from __future__ import annotations

import numpy as np

from structinterp import InterpolationProblem, SymmetryClass

CLASS_TAGS = ("even", "odd", "jeven", "general_ab", "gpe")


def random_matrix(rng, m, scale=1.0):
    return scale * (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m)))


def random_symmetry(rng, tag, m):
    if tag == "jeven":
        Q, _ = np.linalg.qr(random_matrix(rng, m))
        k = int(rng.integers(0, m + 1))
        return SymmetryClass.jeven(Q @ np.diag(np.r_[-np.ones(k), np.ones(m - k)]) @ Q.conj().T)
    if tag == "general_ab":
        A = random_matrix(rng, m) + 3 * np.eye(m)
        return SymmetryClass.general_ab(A, np.linalg.inv(A.conj().T))
    return SymmetryClass(tag)


def axis_value(rng, sym, m):
    """A value Y with Y = (A Y B)^*, as required at a node on the axis."""
    A, B = sym.ab(m)
    Y = random_matrix(rng, m)
    Y = 0.5 * (Y + (A @ Y @ B).conj().T)
    if sym.tag == "gpe":
        Y = Y @ Y.conj().T
    return Y


def random_nodes(rng, n, on_axis=0, spread=3.0):
    """n distinct nodes, none mirroring another; the first ``on_axis`` lie on i*R."""
    nodes = []
    while len(nodes) < n:
        if len(nodes) < on_axis:
            x = 1j * rng.uniform(-spread, spread)
        else:
            x = complex(rng.uniform(0.3, spread), rng.uniform(-spread, spread))
        if all(abs(x - y) > 0.2 and abs(x + np.conj(y)) > 0.2 for y in nodes):
            nodes.append(x)
    return np.array(nodes)


def random_problem(seed, tag=None, m=None, n=None, on_axis=None):
    rng = np.random.default_rng(seed)
    tag = tag or CLASS_TAGS[int(rng.integers(len(CLASS_TAGS)))]
    m = m or int(rng.integers(1, 4))
    n = n or int(rng.integers(1, 4))
    on_axis = int(rng.integers(0, n + 1)) if on_axis is None else on_axis
    sym = random_symmetry(rng, tag, m)
    nodes = random_nodes(rng, n, on_axis)
    values = [axis_value(rng, sym, m) if k < on_axis else random_matrix(rng, m) for k in range(n)]
    return InterpolationProblem(nodes, np.array(values), sym)
