import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from ghzbell import pauli as pa
from ghzbell.ghz import ghz_observable

TOL = 1e-12


def naive_matmul(a, b):
    """Triple loop, independent of numpy's matmul."""
    n = len(a)
    return np.array([[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)])


def test_pauli_entries_fixed_by_action_on_basis():
    # sigma_x|a> = |b>, sigma_x|b> = |a>, sigma_y|a> = i|b>, sigma_y|b> = -i|a>
    assert np.array_equal(pa.pauli("x"), [[0, 1], [1, 0]])
    assert np.array_equal(pa.pauli("y"), [[0, -1j], [1j, 0]])
    assert np.array_equal(pa.pauli("z"), [[1, 0], [0, -1]])
    assert pa.approx_eq(pa.apply(pa.SIGMA_X, pa.ALPHA), pa.BETA)
    assert pa.approx_eq(pa.apply(pa.SIGMA_X, pa.BETA), pa.ALPHA)
    assert pa.approx_eq(pa.apply(pa.SIGMA_Y, pa.ALPHA), 1j * pa.BETA)
    assert pa.approx_eq(pa.apply(pa.SIGMA_Y, pa.BETA), -1j * pa.ALPHA)


def test_pauli_angle_zero_is_sigma_z():
    assert pa.approx_eq(pa.pauli(0.0), pa.SIGMA_Z)
    assert pa.approx_eq(pa.pauli(np.pi / 2), pa.SIGMA_X)


def test_pauli_rejects_bad_input():
    with pytest.raises(ValueError):
        pa.pauli("w")
    with pytest.raises(ValueError):
        pa.pauli(float("nan"))


@pytest.mark.parametrize("spec", ["x", "y", "z", 0.3, -2.0, 7.5])
def test_pauli_hermitian_and_involutive(spec):
    p = pa.pauli(spec)
    assert pa.approx_eq(p, p.conj().T, TOL)
    assert pa.approx_eq(p @ p, np.eye(2), TOL)


@pytest.mark.parametrize("i,j", list(itertools.permutations("xyz", 2)))
def test_distinct_axes_anticommute(i, j):
    assert pa.approx_eq(pa.commutator(pa.pauli(i), pa.pauli(j), anti=True), np.zeros((2, 2)), TOL)


def test_commutator_xy_is_2i_sigma_z():
    x, y = pa.SIGMA_X.tolist(), pa.SIGMA_Y.tolist()
    oracle = naive_matmul(x, y) - naive_matmul(y, x)
    assert np.array_equal(oracle, 2j * np.array([[1, 0], [0, -1]]))
    assert pa.approx_eq(pa.commutator(pa.SIGMA_X, pa.SIGMA_Y), oracle, TOL)


def test_self_commutator_vanishes(rng):
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    assert pa.approx_eq(pa.commutator(m, m), np.zeros((4, 4)), TOL)


def test_compose_basics():
    assert pa.approx_eq(pa.compose(pa.SIGMA_X, pa.SIGMA_X), np.eye(2))
    assert pa.approx_eq(pa.compose(pa.SIGMA_X, pa.SIGMA_Y), -pa.compose(pa.SIGMA_Y, pa.SIGMA_X))
    m = np.arange(16).reshape(4, 4).astype(complex)
    assert pa.approx_eq(pa.compose(np.eye(4), m), m)
    with pytest.raises(ValueError):
        pa.compose(np.eye(2), np.eye(4))


def test_embed_single_qubit_is_identity_embedding():
    assert np.array_equal(pa.embed(pa.SIGMA_X, 1, 1), pa.SIGMA_X)


def test_embed_second_of_two_is_block_diagonal():
    # I (x) sigma_x written out by hand
    expected = np.array([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    assert np.array_equal(pa.embed(pa.SIGMA_X, 2, 2), expected)


def test_embed_first_particle_is_most_significant():
    # sigma_x on particle 1 of 3 flips index 0 (|aaa>) to index 4 (|baa>)
    v = np.zeros(8, complex)
    v[0] = 1
    assert pa.apply(pa.embed(pa.SIGMA_X, 1, 3), v)[4] == 1


def test_embed_different_particles_commute():
    a = pa.embed(pa.SIGMA_X, 1, 3)
    b = pa.embed(pa.SIGMA_Y, 2, 3)
    assert pa.approx_eq(a @ b, b @ a, TOL)


@pytest.mark.parametrize("particle,n", [(0, 3), (4, 3), (2, 1)])
def test_embed_out_of_range(particle, n):
    with pytest.raises(ValueError):
        pa.embed(pa.SIGMA_X, particle, n)


def test_apply():
    v = np.array([0.6, 0.8j])
    assert pa.approx_eq(pa.apply(np.eye(2), v), v)
    with pytest.raises(ValueError):
        pa.apply(np.eye(4), v)


def test_approx_eq():
    assert pa.approx_eq(pa.SIGMA_Z, pa.SIGMA_Z, 1e-12)
    assert not pa.approx_eq(pa.SIGMA_X, pa.SIGMA_Y, 1e-12)
    with pytest.raises(ValueError):
        pa.approx_eq(pa.SIGMA_X, pa.SIGMA_Y, 0.0)
    with pytest.raises(ValueError):
        pa.approx_eq(np.eye(2), np.eye(4))
    prod = pa.product(*(ghz_observable(lab).matrix for lab in ("A1", "A2", "A3", "A4")))
    assert pa.approx_eq(prod, -np.eye(8), 1e-12)


def test_constants_are_read_only():
    with pytest.raises(ValueError):
        pa.SIGMA_X[0, 0] = 5


small = st.floats(-1, 1, allow_nan=False)
mat2 = arrays(np.float64, (2, 2, 2), elements=small).map(lambda a: a[0] + 1j * a[1])


@settings(max_examples=200, deadline=None)
@given(a=mat2, b=mat2, p=st.integers(1, 3), q=st.integers(1, 3))
def test_embed_preserves_commutation_across_particles(a, b, p, q):
    if p == q:
        return
    ea, eb = pa.embed(a, p, 3), pa.embed(b, q, 3)
    assert pa.approx_eq(pa.commutator(ea, eb), np.zeros((8, 8)), TOL)


unit_entries = st.sampled_from([0, 1, -1, 1j, -1j])
unit_mat = st.lists(unit_entries, min_size=16, max_size=16).map(lambda v: np.array(v, complex).reshape(4, 4))


@settings(max_examples=200, deadline=None)
@given(a=unit_mat, b=unit_mat, c=unit_mat)
def test_compose_associative(a, b, c):
    assert pa.approx_eq(pa.compose(pa.compose(a, b), c), pa.compose(a, pa.compose(b, c)), TOL)


@settings(max_examples=100, deadline=None)
@given(theta=st.floats(-20, 20, allow_nan=False))
def test_angle_pauli_involutive(theta):
    p = pa.pauli(theta)
    assert pa.is_hermitian(p)
    assert pa.approx_eq(p @ p, np.eye(2), TOL)
