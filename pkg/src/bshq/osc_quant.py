"""Quantum operators of the 2-d harmonic oscillator on a truncated Fock basis.

The basis ``e_{m,n}`` (``m + n <= n_max``) is orthonormal and ordered shell by
shell, so every shell-preserving operator is block diagonal with contiguous
blocks.  ``hbar/i`` is implemented as ``-1j * hbar``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.sparse as sp

from .lattice import FockIndex, basis_position, oscillator_basis, shell_slice
from .opcore import SparseOperator, VerificationReport, adjoint, commutator, compose


class ActionOps(NamedTuple):
    qa1: SparseOperator
    qa2: SparseOperator
    qe: SparseOperator
    ql: SparseOperator


class ZOps(NamedTuple):
    qz1: SparseOperator
    qz1bar: SparseOperator
    qz2: SparseOperator
    qz2bar: SparseOperator
    #: basis states whose raised image fell outside the cutoff and was dropped
    truncated: tuple[FockIndex, ...]


class PiOps(NamedTuple):
    qpi1: SparseOperator
    qpi2: SparseOperator
    qpi3: SparseOperator
    qpi4: SparseOperator


@dataclass(frozen=True)
class OscillatorOperators:
    n_max: int
    hbar: float
    qa1: SparseOperator
    qa2: SparseOperator
    qe: SparseOperator
    ql: SparseOperator
    qz1: SparseOperator
    qz2: SparseOperator
    qz1bar: SparseOperator
    qz2bar: SparseOperator
    qpi1: SparseOperator
    qpi2: SparseOperator
    qpi3: SparseOperator
    qpi4: SparseOperator
    truncated: tuple[FockIndex, ...] = ()

    @property
    def dim(self) -> int:
        return (self.n_max + 1) * (self.n_max + 2) // 2

    @property
    def pi_ops(self) -> tuple[SparseOperator, SparseOperator, SparseOperator]:
        return self.qpi1, self.qpi2, self.qpi3

    def with_ops(self, **replacements) -> "OscillatorOperators":
        """Copy with some operators swapped out (used for mutation testing)."""
        fields = {k: getattr(self, k) for k in self.__dataclass_fields__}
        fields.update(replacements)
        return OscillatorOperators(**fields)


def build_action_ops(n_max: int, hbar: float = 1.0) -> ActionOps:
    basis = oscillator_basis(n_max)
    m = np.array([b.m for b in basis], dtype=float)
    n = np.array([b.n for b in basis], dtype=float)
    return ActionOps(
        SparseOperator.diagonal(hbar * m),
        SparseOperator.diagonal(hbar * n),
        SparseOperator.diagonal(hbar * (m + n)),
        SparseOperator.diagonal(hbar * (m - n)),
    )


def build_z_ops(n_max: int, hbar: float = 1.0) -> ZOps:
    """Lowering ``Q_{z_j}`` and raising ``Q_{zbar_j}`` operators.

    Raising out of the top shell leaves the truncated space; those images are
    dropped and the affected states listed in ``truncated``.
    """
    basis = oscillator_basis(n_max)
    dim = len(basis)
    z1, z1b, z2, z2b = {}, {}, {}, {}
    truncated = []
    for col, (m, n) in enumerate(basis):
        if m >= 1:
            z1[basis_position(FockIndex(m - 1, n)), col] = math.sqrt(2 * m * hbar)
        if n >= 1:
            z2[basis_position(FockIndex(m, n - 1)), col] = math.sqrt(2 * n * hbar)
        if m + n + 1 <= n_max:
            z1b[basis_position(FockIndex(m + 1, n)), col] = math.sqrt(2 * (m + 1) * hbar)
            z2b[basis_position(FockIndex(m, n + 1)), col] = math.sqrt(2 * (n + 1) * hbar)
        else:
            truncated.append(FockIndex(m, n))
    mk = lambda e: SparseOperator.from_entries(e, dim=dim)  # noqa: E731
    return ZOps(mk(z1), mk(z1b), mk(z2), mk(z2b), tuple(truncated))


def build_pi_ops(n_max: int, hbar: float = 1.0) -> PiOps:
    """The u(2) generators, straight from their closed-form matrix elements."""
    basis = oscillator_basis(n_max)
    dim = len(basis)
    p1, p2 = {}, {}
    for col, (m, n) in enumerate(basis):
        # e_{m,n} -> e_{m-1,n+1}
        if m >= 1:
            row = basis_position(FockIndex(m - 1, n + 1))
            c = hbar * math.sqrt(m * (n + 1))
            p1[row, col] = c
            p2[row, col] = -1j * c
        # e_{m,n} -> e_{m+1,n-1}
        if n >= 1:
            row = basis_position(FockIndex(m + 1, n - 1))
            c = hbar * math.sqrt((m + 1) * n)
            p1[row, col] = c
            p2[row, col] = 1j * c
    _, _, qe, ql = build_action_ops(n_max, hbar)
    return PiOps(
        SparseOperator.from_entries(p1, dim=dim),
        SparseOperator.from_entries(p2, dim=dim),
        ql,
        qe,
    )


def build_oscillator_ops(n_max: int, hbar: float = 1.0) -> OscillatorOperators:
    a = build_action_ops(n_max, hbar)
    z = build_z_ops(n_max, hbar)
    p = build_pi_ops(n_max, hbar)
    return OscillatorOperators(
        n_max=n_max, hbar=hbar,
        qa1=a.qa1, qa2=a.qa2, qe=a.qe, ql=a.ql,
        qz1=z.qz1, qz2=z.qz2, qz1bar=z.qz1bar, qz2bar=z.qz2bar,
        qpi1=p.qpi1, qpi2=p.qpi2, qpi3=p.qpi3, qpi4=p.qpi4,
        truncated=z.truncated,
    )


def interior_slice(n_max: int) -> slice:
    """Basis positions of the shells ``N <= n_max - 1``."""
    return slice(0, n_max * (n_max + 1) // 2)


def verify_su2_u2(ops: OscillatorOperators, tol: float = 1e-12) -> VerificationReport:
    h = ops.hbar
    r = VerificationReport()
    p1, p2, p3 = ops.pi_ops
    r.add_operator("osc: [Qpi1,Qpi2] = (hbar/i) 2 Qpi3", commutator(p1, p2) - (-2j * h) * p3, tol)
    r.add_operator("osc: [Qpi1,Qpi3] = -(hbar/i) 2 Qpi2", commutator(p1, p3) - (2j * h) * p2, tol)
    r.add_operator("osc: [Qpi2,Qpi3] = (hbar/i) 2 Qpi1", commutator(p2, p3) - (-2j * h) * p1, tol)
    for j, pj in enumerate(ops.pi_ops, start=1):
        r.add_operator(f"osc: [QE,Qpi{j}] = 0", commutator(ops.qe, pj), tol)
    for k, pk in enumerate((ops.qpi1, ops.qpi2, ops.qpi3, ops.qpi4), start=1):
        r.add_operator(f"osc: Qpi{k} self-adjoint", adjoint(pk) - pk, tol)
    r.add_operator("osc: Qpi3 = QL", ops.qpi3 - ops.ql, tol)
    r.add_operator("osc: Qpi4 = QE = QA1 + QA2", ops.qpi4 - (ops.qa1 + ops.qa2), tol)

    inner = interior_slice(ops.n_max)
    lift_a = compose(ops.qz1, ops.qz2bar)
    lift_b = compose(ops.qz1bar, ops.qz2)
    comp1 = (lift_a + lift_b) * 0.5
    comp2 = (lift_a - lift_b) * (1 / 2j)
    r.add_operator("osc: Qpi1 = (Qz1 Qz2bar + Qz1bar Qz2)/2 on interior shells",
                   (comp1 - ops.qpi1).restrict(inner), tol)
    r.add_operator("osc: Qpi2 = (Qz1 Qz2bar - Qz1bar Qz2)/2i on interior shells",
                   (comp2 - ops.qpi2).restrict(inner), tol)
    r.add_operator("osc: Qzbar1 = Qz1^dagger on interior shells",
                   (adjoint(ops.qz1) - ops.qz1bar).restrict(slice(None), inner), tol)
    r.add_operator("osc: Qzbar2 = Qz2^dagger on interior shells",
                   (adjoint(ops.qz2) - ops.qz2bar).restrict(slice(None), inner), tol)
    return r


class ShellError(ValueError):
    pass


def preserves_shells(op: SparseOperator, n_max: int) -> bool:
    coo = op.csr.tocoo()
    shell_of = np.array([b.shell for b in oscillator_basis(n_max)])
    return bool(np.all(shell_of[coo.row] == shell_of[coo.col]))


def block_decompose(op: SparseOperator, n_max: int) -> dict[int, SparseOperator]:
    """Restriction of a shell-preserving operator to each shell ``H_N``."""
    if op.dim != (n_max + 1) * (n_max + 2) // 2:
        raise ShellError(f"operator dim {op.dim} does not match n_max={n_max}")
    if not preserves_shells(op, n_max):
        raise ShellError("operator connects different shells")
    return {N: op.restrict(shell_slice(N)) for N in range(n_max + 1)}


def reassemble(blocks: dict[int, SparseOperator]) -> SparseOperator:
    return SparseOperator(sp.block_diag([blocks[N].csr for N in sorted(blocks)], format="csr"))


def casimir(ops: OscillatorOperators, N: int) -> SparseOperator:
    """``Qpi1^2 + Qpi2^2 + Qpi3^2`` restricted to shell ``N``."""
    if not 0 <= N <= ops.n_max:
        raise ValueError(f"shell {N} outside 0..{ops.n_max}")
    sl = shell_slice(N)
    total = None
    for p in ops.pi_ops:
        b = p.restrict(sl)
        sq = compose(b, b)
        total = sq if total is None else total + sq
    return total
