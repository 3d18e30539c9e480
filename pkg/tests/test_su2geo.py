import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm
from scipy.spatial.transform import Rotation
from scipy.stats import special_ortho_group, unitary_group

import bshq.classical as cl
import bshq.su2geo as g
from bshq.classical import DomainError

coord = st.floats(-5, 5, allow_nan=False)
vec3 = st.tuples(coord, coord, coord).map(np.array)


def to_su2(W):
    """Divide a random unitary by a square root of its determinant."""
    return W / np.sqrt(np.linalg.det(W))


def test_basis_identification():
    assert np.array_equal(g.j_map(g.E1), [1, 0, 0])
    assert np.array_equal(g.j_map(g.E2), [0, 1, 0])
    assert np.array_equal(g.j_map(g.E3), [0, 0, 1])
    assert np.array_equal(g.bracket(g.E1, g.E2), 2 * g.E3)
    assert np.array_equal(g.bracket(g.E1, g.E1), np.zeros((2, 2)))


def test_j_map_rejects_non_members():
    with pytest.raises(DomainError):
        g.j_map(np.eye(2))
    with pytest.raises(DomainError):
        g.j_map(np.array([[1j, 0], [0, 1j]]))
    with pytest.raises(DomainError):
        g.j_map(np.zeros((3, 3)))


@given(vec3, vec3, coord, coord)
def test_j_map_linear_bijection(v, w, a, b):
    assert np.array_equal(g.j_map(g.j_inv(v)), v)
    assert np.allclose(g.j_map(a * g.j_inv(v) + b * g.j_inv(w)), a * v + b * w, atol=1e-12)


@given(vec3, vec3)
def test_bracket_is_twice_cross(v, w):
    u, u2 = g.j_inv(v), g.j_inv(w)
    assert np.allclose(g.j_map(g.bracket(u, u2)), 2 * np.cross(v, w), atol=1e-13 * (1 + np.abs(v).max() * np.abs(w).max()))


@given(vec3, vec3)
def test_killing_is_euclidean(v, w):
    assert math.isclose(g.killing(g.j_inv(v), g.j_inv(w)), v @ w, abs_tol=1e-12)
    if v @ v > 0:
        assert g.killing(g.j_inv(v), g.j_inv(v)) > 0


def test_killing_examples():
    assert g.killing(g.E1, g.E1) == 1
    assert g.killing(g.E1, g.E2) == 0


def test_ad_invariance_and_membership(rng):
    for W in unitary_group.rvs(2, size=200, random_state=rng):
        U = to_su2(W)
        assert g.is_su2_group(U)
        u, u2 = g.random_algebra(rng), g.random_algebra(rng)
        au = g.ad_action(U, u)
        assert np.max(np.abs(au + au.conj().T)) <= 1e-13 and abs(np.trace(au)) <= 1e-13
        assert abs(g.killing(au, g.ad_action(U, u2)) - g.killing(u, u2)) <= 1e-12
    assert np.array_equal(g.ad_action(np.eye(2), g.E2), g.E2)


def test_su2_exp_matches_scipy(rng):
    for _ in range(100):
        u = g.random_algebra(rng, scale=3.0)
        assert np.allclose(g.su2_exp(u), expm(u), atol=1e-12)
    assert np.array_equal(g.su2_exp(np.zeros((2, 2), dtype=complex)), np.eye(2))
    for t in np.linspace(-10, 10, 41):
        T = g.su2_exp(t * g.E3)
        assert np.max(np.abs(T.conj().T @ T - np.eye(2))) <= 1e-13
        assert abs(np.linalg.det(T) - 1) <= 1e-13


def test_rotation_of_examples():
    R = g.rotation_of(math.pi / 4 * g.E3)
    assert np.allclose(R, [[0, -1, 0], [1, 0, 0], [0, 0, 1]], atol=1e-15)
    assert np.array_equal(g.rotation_of(np.zeros((2, 2), dtype=complex)), np.eye(3))


def test_ad_rotation_intertwining(rng):
    for _ in range(1000):
        u, v = g.random_algebra(rng, 2.0), g.random_algebra(rng)
        lhs = g.j_map(g.ad_action(g.su2_exp(u), v))
        assert np.max(np.abs(lhs - g.rotation_of(u) @ g.j_map(v))) <= 1e-10


def test_rotation_of_group_is_so3(rng):
    for W in unitary_group.rvs(2, size=50, random_state=rng):
        R = g.rotation_of_group(to_su2(W))
        assert np.allclose(R @ R.T, np.eye(3)) and np.isclose(np.linalg.det(R), 1)


def test_every_rotation_is_reached(rng):
    """Each rotation has an su(2) preimage under rotation_of (surjectivity onto SO(3))."""
    for R in special_ortho_group.rvs(3, size=20, random_state=rng):
        rv = Rotation.from_matrix(R).as_rotvec()
        assert np.allclose(g.rotation_of(g.j_inv(rv / 2)), R, atol=1e-12)


def test_momentum_examples():
    assert np.array_equal(g.momentum_J(np.array([1, 0])), [0, 0, 0.5])
    assert g.hermitian_form(g.E3, np.array([1, 0])) == 0.5


@settings(max_examples=100)
@given(vec3, coord, coord, coord, coord)
def test_hermitian_form_components(v, a, b, c, d):
    z = np.array([a + 1j * b, c + 1j * d])
    J = g.momentum_J(z)
    for k, E in enumerate(g.BASIS):
        assert math.isclose(g.hermitian_form(E, z), J[k], abs_tol=1e-12)
    assert math.isclose(g.hermitian_form(g.j_inv(v), z), v @ J, abs_tol=1e-10)


def test_momentum_equivariance(rng):
    for W in unitary_group.rvs(2, size=1000, random_state=rng):
        U = to_su2(W)
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        assert np.max(np.abs(g.momentum_J(U @ z) - g.rotation_of_group(U) @ g.momentum_J(z))) <= 1e-12


def test_diagonal_torus_rotates_by_2t(rng):
    for _ in range(100):
        t = rng.uniform(-5, 5)
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        J0, J1 = g.momentum_J(z), g.momentum_J(np.diag([np.exp(1j * t), np.exp(-1j * t)]) @ z)
        assert np.allclose(J1, cl.reduced_flow_pi3_matrix(t) @ J0)


def test_momentum_vs_hopf(rng):
    Z = rng.normal(size=(10_000, 4))
    z = Z[:, :2] + 1j * Z[:, 2:]
    P = cl.hopf(Z)
    # the two conventions differ by complex conjugation
    assert np.max(np.abs(g.momentum_J(np.conj(z)) - P)) <= 1e-12
    assert np.max(np.abs(g.momentum_J(z) - P * [1, -1, 1])) <= 1e-12


def test_orbit_form():
    e = 1.5
    assert g.orbit_form([0, 0, e], [1, 0, 0], [2, 0, 0], e) == 0.0
    assert g.orbit_form([0, 0, e], [1, 0, 0], [0, 1, 0], e) == pytest.approx(-e / 2)
    with pytest.raises(DomainError):
        g.orbit_form([0, 0, 1.0], [1, 0, 0], [0, 1, 0], e)


def test_orbit_form_matches_reduced_symplectic(rng):
    for _ in range(1000):
        e = rng.uniform(0.1, 5)
        x = rng.normal(size=3)
        x *= e / np.linalg.norm(x)
        assert g.orbit_form_residual(x, rng.normal(size=3), rng.normal(size=3), e) <= 1e-12


def test_random_su2_in_group(rng):
    for _ in range(100):
        assert g.is_su2_group(g.random_su2(rng))
    with pytest.raises(DomainError):
        g.su2_from_ab(0, 0)
