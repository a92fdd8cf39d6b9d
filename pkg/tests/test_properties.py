"""Invariants that hold for every well-posed problem, 200 seeded trials each."""
import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from structinterp import build_neutral, gpe_sweep, hash_adjoint, interpolate, psi_on_axis, reduce_data
from structinterp.interpolator import interpolation_residuals
from structinterp.polycore import evaluate_many
from structinterp.symmetry import coefficient_residual

from problems import random_problem
from test_polycore import random_poly

TRIALS = settings(max_examples=200)
seeds = st.integers(0, 2**32 - 1)
betas = st.floats(-10, 10, allow_nan=False)


def solved(seed):
    prob = random_problem(seed)
    return prob, interpolate(prob)


@TRIALS
@given(seeds, betas)
def test_every_member_of_the_family_interpolates(seed, beta):
    prob, sol = solved(seed)
    F = sol.family.at(beta)
    direct, mirror = interpolation_residuals(F, prob)
    scale = prob.value_scale()
    assert np.max(direct) <= 1e-8 * scale
    assert np.max(mirror) <= 1e-8 * scale


@TRIALS
@given(seeds, betas)
def test_every_member_carries_the_class_symmetry(seed, beta):
    prob, sol = solved(seed)
    assert coefficient_residual(sol.family.at(beta), prob.symmetry) <= 1e-9


@TRIALS
@given(seeds)
def test_neutral_vanishes_at_nodes_and_mirror_images(seed):
    prob = random_problem(seed)
    red = reduce_data(prob)
    psi = build_neutral(red, symmetry=prob.symmetry)
    pts = np.r_[red.nodes, -np.conj(red.nodes)]
    vals = evaluate_many(psi.expansion, pts)
    assert np.max(np.abs(vals)) <= 1e-10 * np.max(np.abs(psi.expansion.coeffs))


@TRIALS
@given(seeds)
def test_hash_adjoint_twice_is_identity(seed):
    F = random_poly(seed)
    assert np.array_equal(hash_adjoint(hash_adjoint(F)).coeffs, F.coeffs)


@TRIALS
@given(seeds, st.floats(-1e3, 1e3, allow_nan=False))
def test_axis_shortcut_matches_full_evaluation(seed, omega):
    prob = random_problem(seed)
    red = reduce_data(prob)
    psi = build_neutral(red, symmetry=prob.symmetry)
    full = evaluate_many(psi.expansion, np.array([1j * omega]))[0]
    short = psi_on_axis(psi, [omega])[0]
    assert np.linalg.norm(short - full) <= 1e-10 * max(np.linalg.norm(full), np.finfo(float).tiny)


@TRIALS
@given(seeds, st.floats(0, 5), st.floats(0, 5))
def test_gpe_verdict_is_monotone_in_beta(seed, b1, db):
    prob = random_problem(seed, tag="gpe")
    fam = interpolate(prob).family
    grid = np.linspace(-30, 30, 1201)
    lo = gpe_sweep(fam.at(b1), grid).verdict
    hi = gpe_sweep(fam.at(b1 + db), grid).verdict
    assert hi or not lo
