"""Classical oscillator geometry: flows, invariants, stratification, Hopf reduction.

Two charts on R^4 are used.  States ``(x1, x2, y1, y2)`` carry
``dy1^dx1 + dy2^dx2``; the complex chart ``(xi1, xi2, eta1, eta2)`` with
``z_j = xi_j + i eta_j = r_j exp(i th_j)`` is related to it by the orthogonal
map :data:`XIETA_TO_XY` read off from the action-angle parametrization, which
carries that form to ``dxi1^deta1 + dxi2^deta2 = dA1^dth1 + dA2^dth2``.
Poisson brackets are taken with :data:`POISSON_W`, i.e. ``{q_i, p_j} = delta_ij``
in whichever chart they are evaluated; both flows obey ``d/dt f = {H, f}`` in
that convention.  All functions accept arrays whose last axis has length 4 (or
3 for points of the reduced sphere) and broadcast over leading axes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

#: relative tolerance for sphere membership and tangency
GEOM_RTOL = 1e-9

_S = 1 / math.sqrt(2)
#: (xi1, xi2, eta1, eta2) -> (x1, x2, y1, y2)
XIETA_TO_XY = np.array([
    [-_S, -_S, 0.0, 0.0],
    [0.0, 0.0, -_S, _S],
    [0.0, 0.0, _S, _S],
    [-_S, _S, 0.0, 0.0],
])
XY_TO_XIETA = XIETA_TO_XY.T  # orthogonal

#: Poisson structure matrix in either chart: {q_i, p_j} = delta_ij
POISSON_W = np.block([[np.zeros((2, 2)), np.eye(2)], [-np.eye(2), np.zeros((2, 2))]])


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class ClassicalState:
    x: tuple[float, float]
    y: tuple[float, float]

    @classmethod
    def from_array(cls, a) -> "ClassicalState":
        a = np.asarray(a, dtype=float)
        return cls((float(a[0]), float(a[1])), (float(a[2]), float(a[3])))

    @property
    def array(self) -> np.ndarray:
        return np.array([*self.x, *self.y])


@dataclass(frozen=True)
class InvariantPoint:
    pi1: float
    pi2: float
    pi3: float
    pi4: float
    relation_residual: float = 0.0

    @property
    def array(self) -> np.ndarray:
        return np.array([self.pi1, self.pi2, self.pi3, self.pi4])


@dataclass(frozen=True)
class ActionAngle:
    A1: float
    A2: float
    th1: float
    th2: float


@dataclass(frozen=True)
class StratumTag:
    stratum: Literal["V0", "V1", "V2"]
    leaf: Literal["point", "circle", "torus2"]


def _arr(s) -> np.ndarray:
    if isinstance(s, ClassicalState):
        return s.array
    return np.asarray(s, dtype=float)


def xieta_to_xy(zeta) -> np.ndarray:
    return _arr(zeta) @ XIETA_TO_XY.T


def xy_to_xieta(s) -> np.ndarray:
    return _arr(s) @ XY_TO_XIETA.T


def to_complex(zeta) -> np.ndarray:
    """``(xi1, xi2, eta1, eta2) -> (z1, z2)``."""
    z = _arr(zeta)
    return z[..., 0:2] + 1j * z[..., 2:4]


def from_complex(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    return np.concatenate([z.real, z.imag], axis=-1)


# ---------------------------------------------------------------------------------
# energy-momentum map and stratification


def energy_momentum(s) -> tuple[np.ndarray, np.ndarray]:
    a = _arr(s)
    x1, x2, y1, y2 = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    e = 0.5 * (x1**2 + y1**2) + 0.5 * (x2**2 + y2**2)
    ell = x1 * y2 - x2 * y1
    return e, ell


def classify(e: float, ell: float, tol: float = 1e-12) -> StratumTag:
    scale = max(1.0, abs(e))
    if e < -tol * scale or abs(ell) > e + tol * scale:
        raise DomainError(f"(e, l) = ({e}, {ell}) lies outside the image |l| <= e")
    if abs(e) <= tol * scale:
        return StratumTag("V0", "point")
    if abs(abs(ell) - e) <= tol * scale:
        return StratumTag("V1", "circle")
    return StratumTag("V2", "torus2")


def leaf_dimension(s, tol: float = 1e-10) -> int:
    """Rank of the derivative of the energy-momentum map at ``s``."""
    a = _arr(s)
    x1, x2, y1, y2 = a
    dE = np.array([x1, x2, y1, y2])
    dL = np.array([y2, -y1, -x2, x1])
    return int(np.linalg.matrix_rank(np.vstack([dE, dL]), tol=tol))


# ---------------------------------------------------------------------------------
# action-angle chart


def from_action_angle(aa: ActionAngle) -> np.ndarray:
    if aa.A1 < 0 or aa.A2 < 0:
        raise DomainError("actions must be nonnegative")
    r1, r2 = math.sqrt(2 * aa.A1), math.sqrt(2 * aa.A2)
    c1, s1, c2, s2 = math.cos(aa.th1), math.sin(aa.th1), math.cos(aa.th2), math.sin(aa.th2)
    return np.array([
        -_S * (r1 * c1 + r2 * c2),
        _S * (-r1 * s1 + r2 * s2),
        _S * (r1 * s1 + r2 * s2),
        _S * (-r1 * c1 + r2 * c2),
    ])


def action_angle_array(A1, A2, th1, th2) -> np.ndarray:
    """Vectorized form of :func:`from_action_angle` (no domain check)."""
    r1, r2 = np.sqrt(2 * np.asarray(A1)), np.sqrt(2 * np.asarray(A2))
    return np.stack([
        -_S * (r1 * np.cos(th1) + r2 * np.cos(th2)),
        _S * (-r1 * np.sin(th1) + r2 * np.sin(th2)),
        _S * (r1 * np.sin(th1) + r2 * np.sin(th2)),
        _S * (-r1 * np.cos(th1) + r2 * np.cos(th2)),
    ], axis=-1)


def to_action_angle(s, tol: float = 1e-12) -> ActionAngle:
    """Inverse chart; only defined where both actions are positive."""
    xi1, xi2, eta1, eta2 = xy_to_xieta(s)
    A1 = 0.5 * (xi1**2 + eta1**2)
    A2 = 0.5 * (xi2**2 + eta2**2)
    if A1 <= tol or A2 <= tol:
        raise DomainError("angles are undefined where an action vanishes")
    tau = 2 * math.pi
    return ActionAngle(float(A1), float(A2),
                       math.atan2(eta1, xi1) % tau, math.atan2(eta2, xi2) % tau)


def action_angle_jacobian(A1: float, A2: float, th1: float, th2: float, h: float = 1e-6) -> np.ndarray:
    """Central-difference Jacobian of the action-angle parametrization."""
    p = np.array([A1, A2, th1, th2], dtype=float)
    J = np.empty((4, 4))
    for k in range(4):
        d = np.zeros(4)
        d[k] = h
        J[:, k] = (action_angle_array(*(p + d)) - action_angle_array(*(p - d))) / (2 * h)
    return J


# ---------------------------------------------------------------------------------
# flows


def flow_E(t: float, s) -> np.ndarray:
    """Oscillator flow ``(x, y) -> (x cos t - y sin t, x sin t + y cos t)``."""
    a = _arr(s)
    c, sn = math.cos(t), math.sin(t)
    x, y = a[..., 0:2], a[..., 2:4]
    return np.concatenate([c * x - sn * y, sn * x + c * y], axis=-1)


def flow_L(t: float, s) -> np.ndarray:
    """Angular-momentum flow: the same plane rotation applied to ``x`` and ``y``."""
    a = _arr(s)
    c, sn = math.cos(t), math.sin(t)
    R = np.array([[c, sn], [-sn, c]])
    return np.concatenate([a[..., 0:2] @ R.T, a[..., 2:4] @ R.T], axis=-1)


def flow_E_matrix(t: float) -> np.ndarray:
    c, s = math.cos(t), math.sin(t)
    I2 = np.eye(2)
    return np.block([[c * I2, -s * I2], [s * I2, c * I2]])


def flow_L_matrix(t: float) -> np.ndarray:
    c, s = math.cos(t), math.sin(t)
    R = np.array([[c, s], [-s, c]])
    Z = np.zeros((2, 2))
    return np.block([[R, Z], [Z, R]])


# ---------------------------------------------------------------------------------
# invariants and Poisson brackets


def pi_invariants(zeta) -> np.ndarray:
    """``(pi1, pi2, pi3, pi4)`` in the complex chart; broadcasts."""
    z = _arr(zeta)
    xi1, xi2, eta1, eta2 = z[..., 0], z[..., 1], z[..., 2], z[..., 3]
    return np.stack([
        xi1 * xi2 + eta1 * eta2,
        xi1 * eta2 - xi2 * eta1,
        0.5 * (xi1**2 + eta1**2 - xi2**2 - eta2**2),
        0.5 * (xi1**2 + eta1**2 + xi2**2 + eta2**2),
    ], axis=-1)


def invariants_pi(zeta) -> InvariantPoint:
    p1, p2, p3, p4 = pi_invariants(zeta)
    res = abs(p1**2 + p2**2 - p4**2 + p3**2)
    return InvariantPoint(float(p1), float(p2), float(p3), float(p4), float(res))


def sigma_invariants(s) -> np.ndarray:
    """``(sigma1..sigma4)`` in the (x, y) chart; ``sigma1^2 = sigma2^2 + sigma3^2 + sigma4^2``.

    ``sigma3`` and ``-sigma4`` are ``pi1`` and ``pi2`` pulled back through the chart.
    """
    a = _arr(s)
    x1, x2, y1, y2 = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    return np.stack([
        0.5 * (y1**2 + x1**2 + y2**2 + x2**2),
        x1 * y2 - x2 * y1,
        0.5 * (y1**2 + x1**2 - y2**2 - x2**2),
        x1 * x2 + y1 * y2,
    ], axis=-1)


_LEVI = np.zeros((3, 3, 3))
for (_i, _j, _k), _v in {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1,
                         (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1}.items():
    _LEVI[_i, _j, _k] = _v


def poisson_bracket_pi(i: int, j: int, at) -> float:
    """``{pi_i, pi_j}`` from the closed-form table, evaluated at an invariant point."""
    if i not in (1, 2, 3, 4) or j not in (1, 2, 3, 4):
        raise IndexError(f"bracket indices must be in 1..4, got ({i}, {j})")
    if i == 4 or j == 4:
        return 0.0
    p = at.array[:3] if isinstance(at, InvariantPoint) else np.asarray(at, dtype=float)[:3]
    return float(2 * _LEVI[i - 1, j - 1] @ p)


def fd_gradient(f: Callable[[np.ndarray], np.ndarray], pts: np.ndarray, h: float = 1e-5) -> np.ndarray:
    """Central-difference gradient of a scalar field on R^4, vectorized over points."""
    pts = np.atleast_2d(pts)
    g = np.empty_like(pts)
    for k in range(pts.shape[-1]):
        d = np.zeros(pts.shape[-1])
        d[k] = h
        g[..., k] = (f(pts + d) - f(pts - d)) / (2 * h)
    return g


def fd_poisson_bracket(f, g, pts: np.ndarray, h: float = 1e-5) -> np.ndarray:
    """``{f, g} = grad f . W grad g`` with finite-difference gradients."""
    gf, gg = fd_gradient(f, pts, h), fd_gradient(g, pts, h)
    return np.einsum("...i,ij,...j->...", gf, POISSON_W, gg)


# ---------------------------------------------------------------------------------
# Hopf fibration and reduced dynamics


def hopf(zeta, e: float | None = None, rtol: float = GEOM_RTOL) -> np.ndarray:
    """Hopf map ``S^3_{sqrt(2e)} -> S^2_e`` (the first three invariants)."""
    z = _arr(zeta)
    norm2 = np.sum(z**2, axis=-1)
    if e is not None and np.any(np.abs(norm2 - 2 * e) > rtol * max(1.0, 2 * e)):
        raise DomainError(f"point not on the 3-sphere of radius sqrt(2e), e={e}")
    return pi_invariants(z)[..., :3]


def hopf_fiber(pi, t, e: float | None = None, rtol: float = GEOM_RTOL) -> np.ndarray:
    """Point ``e^{it} zeta_0`` on the great circle over ``pi``.

    The seed ``zeta_0`` has ``eta1 = 0`` and ``xi1 = sqrt(e + pi3)``, except over
    the south pole where it is ``(0, sqrt(2e), 0, 0)``.  ``t`` may be an array.
    """
    pi = np.asarray(pi, dtype=float)
    r = float(np.linalg.norm(pi))
    if e is None:
        e = r
    if e <= 0:
        raise DomainError("fiber over the degenerate sphere e = 0 is a point")
    if abs(r - e) > rtol * e:
        raise DomainError(f"|pi| = {r} differs from e = {e}")
    p1, p2, p3 = pi
    if e + p3 <= rtol * e:
        seed = np.array([0.0, math.sqrt(2 * e), 0.0, 0.0])
    else:
        a = math.sqrt(e + p3)
        seed = np.array([a, p1 / a, 0.0, p2 / a])
    z0 = to_complex(seed)
    phase = np.exp(1j * np.asarray(t, dtype=float))[..., None]
    return from_complex(phase * z0)


def case1_plane_residual(zeta, pi, e: float) -> np.ndarray:
    """Residuals of the two linear equations cutting out the fiber over ``pi``."""
    z = _arr(zeta)
    xi1, xi2, eta1, eta2 = z[..., 0], z[..., 1], z[..., 2], z[..., 3]
    p1, p2, p3 = pi
    r1 = p1 * xi1 - p2 * eta1 - (e + p3) * xi2
    r2 = p2 * xi1 + p1 * eta1 - (e + p3) * eta2
    return np.maximum(np.abs(r1), np.abs(r2))


def reduced_field(gradK: Callable[[np.ndarray], np.ndarray], pi) -> np.ndarray:
    """Reduced Hamiltonian vector field ``2 (grad K x pi)``."""
    pi = np.asarray(pi, dtype=float)
    return 2 * np.cross(gradK(pi), pi)


def reduced_flow_pi3_matrix(t: float) -> np.ndarray:
    c, s = math.cos(2 * t), math.sin(2 * t)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def reduced_flow_pi3(t: float, pi) -> np.ndarray:
    """Flow of the reduced ``pi3``: rotation by ``2t`` about the third axis (period pi)."""
    return np.asarray(pi, dtype=float) @ reduced_flow_pi3_matrix(t).T


def reduced_symplectic(pi, u, v, e: float | None = None, rtol: float = GEOM_RTOL):
    """Reduced form ``-(1/2e^2) <pi, u x v>`` on tangent vectors of ``S^2_e``.

    Broadcasts over leading axes; returns a float for single vectors.
    """
    pi, u, v = (np.asarray(a, dtype=float) for a in (pi, u, v))
    r = np.linalg.norm(pi, axis=-1)
    if e is None:
        e = float(np.max(r))
    if e <= 0 or np.any(np.abs(r - e) > rtol * e):
        raise DomainError(f"pi not on the sphere of radius e={e}")
    scale = e * np.maximum(np.maximum(np.linalg.norm(u, axis=-1), np.linalg.norm(v, axis=-1)), 1.0)
    if np.any(np.abs(np.sum(u * pi, -1)) > rtol * scale) or np.any(np.abs(np.sum(v * pi, -1)) > rtol * scale):
        raise DomainError("u and v must be tangent to the sphere at pi")
    val = -np.sum(pi * np.cross(u, v), axis=-1) / (2 * e * e)
    return float(val) if np.ndim(val) == 0 else val


def sphere_form_integral(e: float, n_theta: int = 200, n_phi: int = 100) -> float:
    """Midpoint-rule integral of the reduced form over ``S^2_e``.

    The sphere is oriented so that the area form ``-(1/e)<pi, u x v>`` is
    positive, i.e. cells are fed to :func:`reduced_symplectic` as
    ``(d/dphi, d/dtheta)``.
    """
    th = (np.arange(n_theta) + 0.5) * math.pi / n_theta
    ph = (np.arange(n_phi) + 0.5) * 2 * math.pi / n_phi
    T, P = np.meshgrid(th, ph, indexing="ij")
    st, ct, sp_, cp = np.sin(T), np.cos(T), np.sin(P), np.cos(P)
    pi = e * np.stack([st * cp, st * sp_, ct], -1)
    d_th = e * np.stack([ct * cp, ct * sp_, -st], -1)
    d_ph = e * np.stack([-st * sp_, st * cp, np.zeros_like(st)], -1)
    cells = reduced_symplectic(pi, d_ph, d_th, e)
    return float(np.sum(cells)) * (math.pi / n_theta) * (2 * math.pi / n_phi)


def fiber_torus_actions(ell: float, e: float, tol: float = 1e-12) -> tuple[float, float]:
    if abs(ell) > e + tol * max(1.0, e):
        raise DomainError(f"|l| = {abs(ell)} exceeds e = {e}")
    return 0.5 * (e + ell), 0.5 * (e - ell)
