"""Orchestration of every identity check into one report per scope.

Exact algebraic identities use the caller's tolerance.  Two checks measure a
discretization rather than an identity and carry their own floor: the
finite-difference Poisson brackets (``FD_TOL``) and the sphere quadrature
(``QUAD_RTOL``, relative).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import classical as cl
from . import osc_quant, su2geo
from .lattice import EVEN, ODD, oscillator_basis
from .opcore import VerificationReport
from .qreduction import multiplicity_report, round_trip_exact, verify_intertwining
from .red_quant import b_coefficients, build_reduced_ops, parity_invariant, reduced_casimir, verify_reduced_su2

SCOPES = ("oscillator", "reduced", "intertwine", "classical", "su2")
FD_TOL = 1e-6
QUAD_RTOL = 1e-4
COMMUTANT_QMAX = 12


@dataclass(frozen=True)
class RunConfig:
    hbar: float = 1.0
    tol: float = 1e-10
    n_max: int = 20
    q: int = 20
    seed: int = 0
    trials: int = 1000

    def __post_init__(self):
        if not self.hbar > 0:
            raise ValueError("hbar must be positive")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.n_max < 0 or self.q < 0:
            raise ValueError("cutoffs must be nonnegative")
        if self.trials < 1:
            raise ValueError("trials must be positive")


def _bool_check(r: VerificationReport, name: str, ok: bool, tol: float) -> None:
    r.add(name, 0.0 if ok else math.inf, tol)


# ---------------------------------------------------------------------------------
# quantum scopes


def verify_oscillator(cfg: RunConfig) -> VerificationReport:
    h, tol = cfg.hbar, cfg.tol
    ops = osc_quant.build_oscillator_ops(cfg.n_max, h)
    r = osc_quant.verify_su2_u2(ops, tol)

    basis = oscillator_basis(cfg.n_max)
    m = np.array([b.m for b in basis], dtype=float)
    n = np.array([b.n for b in basis], dtype=float)
    for name, op, expect in (("QA1", ops.qa1, m), ("QA2", ops.qa2, n),
                             ("QE", ops.qe, m + n), ("QL", ops.ql, m - n)):
        diag_ok = op.is_diagonal()
        res = np.max(np.abs(op.diagonal_values() / h - expect)) if diag_ok else math.inf
        r.add(f"osc: {name} joint spectrum", res, tol)

    worst = 0.0
    for N in range(cfg.n_max + 1):
        C = osc_quant.casimir(ops, N).to_dense()
        worst = max(worst, float(np.max(np.abs(C - h * h * N * (N + 2) * np.eye(N + 1)))))
    r.add("osc: Casimir = hbar^2 N(N+2) on every shell", worst, tol)
    for k, p in enumerate((ops.qpi1, ops.qpi2, ops.qpi3, ops.qpi4), start=1):
        _bool_check(r, f"osc: Qpi{k} preserves shells", osc_quant.preserves_shells(p, cfg.n_max), tol)
    return r


def verify_reduced(cfg: RunConfig) -> VerificationReport:
    h, tol, q = cfg.hbar, cfg.tol, cfg.q
    r = VerificationReport()
    for qq in range(q + 1):
        r.extend(verify_reduced_su2(qq, tol, h))
    bc = b_coefficients(q)
    _bool_check(r, f"red q={q}: b_sq closes on both chains", bc.b_sq[q + 2] == 0 and bc.b_sq[q + 1] == 0, tol)
    R = build_reduced_ops(q, h)
    _bool_check(r, f"red q={q}: operators preserve parity chains", parity_invariant(R), tol)
    for chain, scalar in ((EVEN, q * (q + 2)), (ODD, q * q - 1)):
        C = reduced_casimir(R, chain).to_dense()
        if C.size:
            res = float(np.max(np.abs(C - h * h * scalar * np.eye(C.shape[0]))))
            r.add(f"red q={q}: Casimir scalar on {chain} chain", res, tol)
    return r


def verify_intertwine(cfg: RunConfig) -> VerificationReport:
    h, tol = cfg.hbar, cfg.tol
    r = VerificationReport()
    osc = osc_quant.build_oscillator_ops(max(cfg.q, cfg.n_max), h)
    for q in range(cfg.q + 1):
        r.extend(verify_intertwining(q, tol, h, osc=osc))
        _bool_check(r, f"intertwine q={q}: round trip exact", round_trip_exact(q), tol)
    for row in multiplicity_report(min(cfg.q, COMMUTANT_QMAX), h, COMMUTANT_QMAX):
        q = row["q"]
        ok = (row["dim_Hq0"] == q + 1 and row["dim_Hq1"] == q
              and row["commutant_Hq"] == 1
              and row["commutant_Hqtilde"] == (2 if q > 0 else 1))
        _bool_check(r, f"multiplicity q={q}: dimensions and commutants", ok, tol)
    return r


# ---------------------------------------------------------------------------------
# classical scope


def _maxabs(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def verify_classical(cfg: RunConfig) -> VerificationReport:
    tol, n = cfg.tol, cfg.trials
    rng = np.random.default_rng(cfg.seed)
    r = VerificationReport()

    A = rng.uniform(0.01, 3.0, size=(n, 2))
    th = rng.uniform(0, 2 * math.pi, size=(n, 2))
    S = cl.action_angle_array(A[:, 0], A[:, 1], th[:, 0], th[:, 1])
    E, L = cl.energy_momentum(S)
    r.add("classical: E = A1 + A2 on the action-angle chart", _maxabs(E - A.sum(1)), tol)
    r.add("classical: L = A1 - A2 on the action-angle chart", _maxabs(L - (A[:, 0] - A[:, 1])), tol)
    rt = 0.0
    for k in range(min(n, 200)):
        aa = cl.to_action_angle(S[k])
        dth = np.angle(np.exp(1j * (np.array([aa.th1, aa.th2]) - th[k])))
        rt = max(rt, abs(aa.A1 - A[k, 0]), abs(aa.A2 - A[k, 1]), *np.abs(dth))
    r.add("classical: action-angle round trip", rt, tol)
    J = cl.action_angle_jacobian(*A[0], *th[0])
    pull = J.T @ cl.POISSON_W.T @ J
    target = np.block([[np.zeros((2, 2)), np.eye(2)], [-np.eye(2), np.zeros((2, 2))]])
    r.add("classical: action-angle chart is symplectic", _maxabs(pull - target), FD_TOL)

    Z = cl.xy_to_xieta(S)
    P = cl.pi_invariants(Z)
    r.add("classical: pi4 = E and pi3 = L", max(_maxabs(P[:, 3] - E), _maxabs(P[:, 2] - L)), tol)
    rel = P[:, 0] ** 2 + P[:, 1] ** 2 + P[:, 2] ** 2 - P[:, 3] ** 2
    r.add("classical: invariant relation", _maxabs(rel), tol)

    pts = rng.normal(size=(n, 4))
    Pp = cl.pi_invariants(pts)
    worst = 0.0
    for i in range(1, 5):
        for j in range(1, 5):
            fd = cl.fd_poisson_bracket(lambda x: cl.pi_invariants(x)[..., i - 1],
                                       lambda x: cl.pi_invariants(x)[..., j - 1], pts)
            exact = 2 * np.einsum("k,nk->n", cl._LEVI[i - 1, j - 1], Pp[:, :3]) if 4 not in (i, j) else 0.0
            worst = max(worst, _maxabs(fd - exact))
    r.add("classical: pi bracket table vs finite differences", worst, FD_TOL)

    t = rng.uniform(-10, 10, size=n)
    fE = np.array([cl.flow_E(tk, s) for tk, s in zip(t, S)])
    fL = np.array([cl.flow_L(tk, s) for tk, s in zip(t, S)])
    em = np.stack([E, L])
    r.add("classical: flow_E preserves (E, L)", _maxabs(np.stack(cl.energy_momentum(fE)) - em), tol)
    r.add("classical: flow_L preserves (E, L)", _maxabs(np.stack(cl.energy_momentum(fL)) - em), tol)
    r.add("classical: flows have period 2 pi",
          max(_maxabs(cl.flow_E(2 * math.pi, S) - S), _maxabs(cl.flow_L(2 * math.pi, S) - S)), tol)
    r.add("classical: hopf o flow_E = hopf", _maxabs(cl.hopf(cl.xy_to_xieta(fE)) - P[:, :3]), tol)
    red_L = np.array([cl.reduced_flow_pi3(tk, p) for tk, p in zip(t, P[:, :3])])
    r.add("classical: hopf o flow_L = reduced pi3 flow o hopf", _maxabs(cl.hopf(cl.xy_to_xieta(fL)) - red_L), tol)

    leaf_ok = (cl.leaf_dimension(S[0]) == 2
               and cl.leaf_dimension(cl.from_action_angle(cl.ActionAngle(1.0, 0.0, 0.3, 0.0))) == 1
               and cl.leaf_dimension(np.zeros(4)) == 0)
    _bool_check(r, "classical: leaf dimension matches stratum", leaf_ok, tol)

    # fibers over random points of random spheres, plus the south pole
    fib_res = plane_res = act_res = 0.0
    for k in range(n):
        e = rng.uniform(0.1, 5.0)
        v = rng.normal(size=3)
        pi = e * v / np.linalg.norm(v) if k else np.array([0.0, 0.0, -e])
        ts = rng.uniform(0, 2 * math.pi, size=4)
        F = cl.hopf_fiber(pi, ts, e)
        fib_res = max(fib_res, _maxabs(cl.hopf(F, e) - pi), _maxabs(np.sum(F**2, -1) - 2 * e))
        if k:
            plane_res = max(plane_res, _maxabs(cl.case1_plane_residual(F, pi, e)))
        a1, a2 = cl.fiber_torus_actions(pi[2], e)
        acts = np.stack([0.5 * (F[:, 0] ** 2 + F[:, 2] ** 2), 0.5 * (F[:, 1] ** 2 + F[:, 3] ** 2)], -1)
        act_res = max(act_res, _maxabs(acts - [a1, a2]))
    r.add("classical: hopf_fiber lies over pi on the 3-sphere", fib_res, tol)
    r.add("classical: fiber solves the two plane equations", plane_res, tol)
    r.add("classical: fiber_torus_actions match sampled fibers", act_res, tol)

    Pu = P[:, :3]
    r.add("classical: reduced pi3 flow has period pi",
          _maxabs(cl.reduced_flow_pi3(math.pi, Pu) - Pu), tol)
    M = rng.normal(size=(3, 3))
    field = np.array([cl.reduced_field(lambda x: (M + M.T) @ x, p) for p in Pu])
    r.add("classical: reduced field is tangent", _maxabs(np.einsum("ni,ni->n", field, Pu) / (1 + np.sum(Pu**2, 1))), tol)
    anti = 0.0
    for p in Pu[:200]:
        u, v = np.cross(p, rng.normal(size=3)), np.cross(p, rng.normal(size=3))
        anti = max(anti, abs(cl.reduced_symplectic(p, u, v) + cl.reduced_symplectic(p, v, u)))
    r.add("classical: reduced form is antisymmetric", anti, tol)

    for q in (1, 2, 5):
        e = q * cfg.hbar
        integral = cl.sphere_form_integral(e)
        r.add(f"classical: integral of reduced form over S^2 at q={q} equals 2 pi q hbar",
              abs(integral - 2 * math.pi * e) / (2 * math.pi * e), QUAD_RTOL)
    return r


# ---------------------------------------------------------------------------------
# su(2) scope


def verify_su2(cfg: RunConfig) -> VerificationReport:
    tol, n = cfg.tol, cfg.trials
    rng = np.random.default_rng(cfg.seed + 1)
    g = su2geo
    r = VerificationReport()
    res = {k: 0.0 for k in ("rt", "br", "kil", "adk", "adinv", "rot", "equi", "comp", "hopf", "orb", "exp", "pos")}
    for _ in range(n):
        u, v = g.random_algebra(rng), g.random_algebra(rng)
        U = g.random_su2(rng)
        ju, jv = g.j_map(u), g.j_map(v)
        res["rt"] = max(res["rt"], _maxabs(g.j_map(g.j_inv(ju)) - ju), _maxabs(g.j_inv(ju) - u))
        res["br"] = max(res["br"], _maxabs(g.j_map(g.bracket(u, v)) - 2 * np.cross(ju, jv)))
        res["kil"] = max(res["kil"], abs(g.killing(u, v) - ju @ jv))
        au, av = g.ad_action(U, u), g.ad_action(U, v)
        res["adk"] = max(res["adk"], abs(g.killing(au, av) - g.killing(u, v)))
        res["adinv"] = max(res["adinv"], _maxabs(au + np.conj(au).T), abs(np.trace(au)))
        res["rot"] = max(res["rot"], _maxabs(g.j_map(g.ad_action(g.su2_exp(u), v)) - g.rotation_of(u) @ jv))
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        Jz = g.momentum_J(z)
        res["equi"] = max(res["equi"], _maxabs(g.momentum_J(U @ z) - g.rotation_of_group(U) @ Jz))
        res["comp"] = max(res["comp"], max(abs(g.hermitian_form(Ek, z) - Jz[k]) for k, Ek in enumerate(g.BASIS)))
        zeta = np.concatenate([z.real, z.imag])
        res["hopf"] = max(res["hopf"], _maxabs(g.momentum_J(np.conj(z)) - cl.hopf(zeta)))
        e = rng.uniform(0.1, 5.0)
        x = e * ju / np.linalg.norm(ju)
        res["orb"] = max(res["orb"], g.orbit_form_residual(x, rng.normal(size=3), rng.normal(size=3), e))
        T = g.su2_exp(rng.uniform(-10, 10) * g.E3)
        res["exp"] = max(res["exp"], _maxabs(np.conj(T).T @ T - np.eye(2)), abs(np.linalg.det(T) - 1))
        res["pos"] = max(res["pos"], 0.0 if g.killing(u, u) > 0 else math.inf)
    labels = {
        "rt": "su2: j_map and j_inv are inverse",
        "br": "su2: j([u,u']) = 2 j(u) x j(u')",
        "kil": "su2: Killing form = Euclidean pairing",
        "adk": "su2: Killing form is Ad-invariant",
        "adinv": "su2: Ad preserves anti-hermitian traceless",
        "rot": "su2: j(Ad_exp(u) v) = rotation_of(u) j(v)",
        "equi": "su2: momentum map is equivariant",
        "comp": "su2: hermitian_form(E_j) = J_j",
        "hopf": "su2: momentum map = hopf under z = xi - i eta",
        "orb": "su2: orbit_form = reduced_symplectic",
        "exp": "su2: exp(t E3) in SU(2)",
        "pos": "su2: Killing form positive definite",
    }
    for k, name in labels.items():
        r.add(name, res[k], tol)
    return r


_RUNNERS = {
    "oscillator": verify_oscillator,
    "reduced": verify_reduced,
    "intertwine": verify_intertwine,
    "classical": verify_classical,
    "su2": verify_su2,
}


def run_verification(scope: str, cfg: RunConfig) -> VerificationReport:
    if scope == "all":
        r = VerificationReport()
        for s in SCOPES:
            r.extend(_RUNNERS[s](cfg))
        return r
    if scope not in _RUNNERS:
        raise ValueError(f"unknown scope {scope!r}")
    return _RUNNERS[scope](cfg)
