"""su(2), SU(2) and their identification with R^3.

``u = [[iz, -y + ix], [y + ix, -iz]]`` corresponds to ``(x, y, z)``; with this
choice the matrix commutator becomes twice the cross product and the Killing
form ``1/2 tr(u conj(u')^T)`` becomes the Euclidean inner product.
"""

from __future__ import annotations

import math

import numpy as np

from .classical import DomainError, reduced_symplectic

#: invariant tolerance for algebra/group membership
MEMBER_TOL = 1e-12

E1 = np.array([[0, 1j], [1j, 0]])
E2 = np.array([[0, -1], [1, 0]], dtype=complex)
E3 = np.array([[1j, 0], [0, -1j]])
BASIS = (E1, E2, E3)


def _check_algebra(u: np.ndarray, tol: float = MEMBER_TOL) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.shape[-2:] != (2, 2):
        raise DomainError(f"expected 2x2 matrices, got shape {u.shape}")
    scale = max(1.0, float(np.max(np.abs(u))))
    if np.max(np.abs(u + np.conj(np.swapaxes(u, -1, -2)))) > tol * scale:
        raise DomainError("matrix is not anti-hermitian")
    if np.max(np.abs(u[..., 0, 0] + u[..., 1, 1])) > tol * scale:
        raise DomainError("matrix is not traceless")
    return u


def j_map(u) -> np.ndarray:
    u = _check_algebra(u)
    return np.stack([u[..., 1, 0].imag, u[..., 1, 0].real, u[..., 0, 0].imag], axis=-1)


def j_inv(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    x, y, z = v[..., 0], v[..., 1], v[..., 2]
    out = np.empty(v.shape[:-1] + (2, 2), dtype=complex)
    out[..., 0, 0] = 1j * z
    out[..., 0, 1] = -y + 1j * x
    out[..., 1, 0] = y + 1j * x
    out[..., 1, 1] = -1j * z
    return out


def hat(v) -> np.ndarray:
    """Skew 3x3 matrix of ``w -> v x w``."""
    x, y, z = np.asarray(v, dtype=float)
    return np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])


def bracket(u, u2) -> np.ndarray:
    return u @ u2 - u2 @ u


def killing(u, u2) -> float:
    """``1/2 tr(u conj(u2)^T)``."""
    return float(0.5 * np.trace(u @ np.conj(u2).T).real)


def su2_exp(u) -> np.ndarray:
    """Closed-form exponential ``cos(theta) I + sin(theta)/theta u``, ``theta = |j(u)|``."""
    theta = float(np.linalg.norm(j_map(u)))
    sinc = 1.0 if theta == 0.0 else math.sin(theta) / theta
    return math.cos(theta) * np.eye(2) + sinc * np.asarray(u, dtype=complex)


def is_su2_group(U, tol: float = MEMBER_TOL) -> bool:
    U = np.asarray(U, dtype=complex)
    return bool(np.max(np.abs(np.conj(U).T @ U - np.eye(2))) <= tol
                and abs(np.linalg.det(U) - 1) <= tol)


def su2_from_ab(alpha: complex, beta: complex) -> np.ndarray:
    """``[[alpha, -beta], [conj(beta), conj(alpha)]]`` after normalizing."""
    r = math.hypot(abs(alpha), abs(beta))
    if r == 0:
        raise DomainError("alpha and beta cannot both vanish")
    a, b = alpha / r, beta / r
    return np.array([[a, -b], [np.conj(b), np.conj(a)]])


def random_su2(rng: np.random.Generator) -> np.ndarray:
    w = rng.normal(size=4)
    return su2_from_ab(complex(w[0], w[1]), complex(w[2], w[3]))


def random_algebra(rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    return j_inv(scale * rng.normal(size=3))


def ad_action(U, u) -> np.ndarray:
    """``U u U^{-1}`` (``U^{-1} = conj(U)^T`` on SU(2))."""
    U = np.asarray(U, dtype=complex)
    return U @ np.asarray(u, dtype=complex) @ np.conj(U).T


def rotation_of(u) -> np.ndarray:
    """``exp(2 hat(j(u)))`` via Rodrigues' formula."""
    w = 2 * j_map(u)
    th = float(np.linalg.norm(w))
    if th == 0.0:
        return np.eye(3)
    K = hat(w / th)
    return np.eye(3) + math.sin(th) * K + (1 - math.cos(th)) * (K @ K)


def rotation_of_group(U) -> np.ndarray:
    """Rotation ``R`` with ``j(Ad_U v) = R j(v)``, read off column by column."""
    return np.column_stack([j_map(ad_action(U, Ek)) for Ek in BASIS])


def momentum_J(z) -> np.ndarray:
    """``(Re z1 conj(z2), Im z1 conj(z2), 1/2(|z1|^2 - |z2|^2))``; broadcasts."""
    z = np.asarray(z, dtype=complex)
    w = z[..., 0] * np.conj(z[..., 1])
    return np.stack([w.real, w.imag, 0.5 * (np.abs(z[..., 0]) ** 2 - np.abs(z[..., 1]) ** 2)], axis=-1)


def hermitian_form(u, z) -> float:
    """``1/2 conj(z)^T (-i u) z``; real for ``u`` in su(2)."""
    z = np.asarray(z, dtype=complex)
    return float((0.5 * np.conj(z) @ (-1j * np.asarray(u)) @ z).real)


def orbit_form(x, y, y2, e: float, rtol: float = 1e-9) -> float:
    """Orbit form on ``(x cross y, x cross y2)`` at ``|x| = e``: ``-1/2 <x, y cross y2>``."""
    x = np.asarray(x, dtype=float)
    if abs(np.linalg.norm(x) - e) > rtol * max(1.0, e):
        raise DomainError(f"|x| = {np.linalg.norm(x)} differs from e = {e}")
    return float(-0.5 * (x @ np.cross(y, y2)))


def orbit_form_residual(x, y, y2, e: float) -> float:
    """Mismatch between :func:`orbit_form` and the reduced form on the same tangent pair."""
    x = np.asarray(x, dtype=float)
    return abs(orbit_form(x, y, y2, e) - reduced_symplectic(x, np.cross(x, y), np.cross(x, y2), e))
