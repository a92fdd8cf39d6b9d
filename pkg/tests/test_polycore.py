import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from structinterp import MatrixPolynomial, evaluate, hash_adjoint, mcmillan_degree, reverse
from structinterp.polycore import block_toeplitz, evaluate_many, numerical_rank

from problems import random_matrix


def random_poly(seed, m=None, q=None):
    rng = np.random.default_rng(seed)
    m = m or int(rng.integers(1, 4))
    q = int(rng.integers(0, 5)) if q is None else q
    return MatrixPolynomial(np.array([random_matrix(rng, m) for _ in range(q + 1)]))


seeds = st.integers(0, 2**32 - 1)


def test_scalar_list_is_accepted_and_trimmed():
    F = MatrixPolynomial([1, 2, 0, 0])
    assert F.m == 1 and F.degree == 1
    assert F.coeffs.shape == (2, 1, 1)


def test_coefficients_are_read_only():
    F = MatrixPolynomial.scalar([1, 2])
    with pytest.raises(ValueError):
        F.coeffs[0, 0, 0] = 5


def test_zero_polynomial():
    Z = MatrixPolynomial.zeros(2)
    assert Z.is_zero() and Z.degree == 0
    assert np.all(evaluate(Z, 3 + 1j) == 0)


def test_worked_interpolant_values():
    F1 = MatrixPolynomial.scalar([-121, 180, -41])
    assert [evaluate(F1, s)[0, 0] for s in (1, 2, 3)] == [18, 75, 50]


def test_quartic_value_at_three():
    P = MatrixPolynomial.scalar([-13, 0, 34, 0, -3])
    assert evaluate(P, 3)[0, 0] == 50


def test_misprinted_leading_coefficient_misses_second_node():
    # with -45 in place of -41 the value at s = 2 is 59, not 75
    assert evaluate(MatrixPolynomial.scalar([-121, 180, -45]), 2)[0, 0] == 59


def test_constant_evaluates_to_itself():
    C = np.array([[1, 2j], [3, 4]])
    F = MatrixPolynomial.constant(C)
    assert np.array_equal(evaluate(F, 7 - 2j), C)


def test_diag_constructor():
    F = MatrixPolynomial.diag([-36, 0, 0, 0, 1], [16, 0, -8, 0, 1])
    assert np.allclose(evaluate(F, 2), np.diag([-20, 0]))


def test_evaluate_many_matches_evaluate():
    F = random_poly(3, m=2, q=4)
    pts = np.array([0, 1j, -2 + 0.5j, 3.0])
    batch = evaluate_many(F, pts)
    for k, s in enumerate(pts):
        assert np.allclose(batch[k], evaluate(F, s), rtol=1e-13, atol=1e-13)


@settings(max_examples=200)
@given(seeds)
def test_hash_adjoint_is_an_involution(seed):
    F = random_poly(seed)
    assert np.array_equal(hash_adjoint(hash_adjoint(F)).coeffs, F.coeffs)


def test_hash_adjoint_identity_on_random_points():
    F = random_poly(11, m=3, q=5)
    G = hash_adjoint(F)
    rng = np.random.default_rng(0)
    pts = rng.standard_normal(1000) + 1j * rng.standard_normal(1000)
    lhs = evaluate_many(G, pts)
    rhs = np.conj(np.swapaxes(evaluate_many(F, -np.conj(pts)), 1, 2))
    assert np.allclose(lhs, rhs, rtol=1e-12, atol=1e-12)


@given(seeds, st.floats(-5, 5), st.floats(-5, 5))
def test_hash_adjoint_is_conjugate_linear(seed, a, b):
    F = random_poly(seed, m=2, q=3)
    G = random_poly(seed + 1, m=2, q=3)
    z = complex(a, b)
    lhs = hash_adjoint(F * z + G)
    rhs = hash_adjoint(F) * np.conj(z) + hash_adjoint(G)
    assert lhs.allclose(rhs, atol=1e-10)


def test_reverse_keeps_padding():
    F = MatrixPolynomial.scalar([1, 2, 3])
    assert np.array_equal(reverse(F).coeffs.ravel(), [3, 2, 1])


def test_block_toeplitz_layout():
    F = MatrixPolynomial.scalar([5, 6, 7])
    # upper triangular Toeplitz built from C_q, C_{q-1}, ...
    assert np.array_equal(block_toeplitz(F).real, [[7, 6, 5], [0, 7, 6], [0, 0, 7]])


@pytest.mark.parametrize(
    "F, degree",
    [
        (MatrixPolynomial.zeros(2), 0),
        (MatrixPolynomial.constant(np.eye(3)), 3),
        (MatrixPolynomial.diag([-36, 0, 0, 0, 1], [16, 0, -8, 0, 1]), 10),
        (MatrixPolynomial.diag([0, 1], [1]), 3),
        (MatrixPolynomial.scalar([1, 0, 0, 4]), 4),
    ],
)
def test_mcmillan_degree(F, degree):
    assert mcmillan_degree(F) == degree


@given(seeds)
def test_scalar_mcmillan_degree_counts_all_coefficient_blocks(seed):
    F = random_poly(seed, m=1)
    assert mcmillan_degree(F) == F.degree + 1


def test_numerical_rank_relative_tolerance():
    A = np.diag([1.0, 1e-8, 1e-12])
    assert numerical_rank(A) == 2
