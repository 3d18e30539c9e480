"""Quantization of the reduced sphere: shifting-coefficient algebra and su(2) operators.

The reduced space ``H~_q`` has orthonormal basis ``e~_{p,q}``, ``p = -q..q``,
stored at position ``p + q``.  ``Q_{pi~+}`` lowers ``p`` by two and ``Q_{pi~-}``
raises it by two; the squared shift coefficients ``b_p^2 / hbar^2`` are kept as
exact integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .lattice import EVEN, ODD, ChainTag, _check_nonneg, parity_chain
from .opcore import SparseOperator, VerificationReport, adjoint, commutator, compose


class BCoefficientError(ArithmeticError):
    """The shift-coefficient recurrence produced an inconsistent table."""


@dataclass(frozen=True)
class BCoefficients:
    q: int
    #: p -> b_p^2 / hbar^2 on both parity chains, including boundary points
    b_sq: dict[int, int]

    def b(self, p: int, hbar: float = 1.0) -> float:
        return hbar * math.sqrt(self.b_sq[p])

    def chain(self, p: int) -> ChainTag:
        return EVEN if (p - self.q) % 2 == 0 else ODD

    def is_boundary(self, p: int) -> bool:
        return p > self.q


def b_closed_form(p: int, q: int) -> int:
    """``(p + q)(q - p + 2)``, valid on the chain ``p = q (mod 2)``."""
    return (p + q) * (q - p + 2)


def propagate_chain(start: int, stop: int) -> dict[int, int]:
    """Solve ``b(p+2) - b(p) = -4p`` upward from ``b(start) = 0`` to ``stop``."""
    table = {start: 0}
    p = start
    while p < stop:
        table[p + 2] = table[p] - 4 * p
        p += 2
    return table


def b_coefficients(q: int) -> BCoefficients:
    """Squared shift coefficients on both parity chains.

    The even chain starts at ``b_{-q} = 0`` and must reproduce the closed form
    and vanish at ``q + 2``; the odd chain starts at ``b_{-q+1} = 0`` and must
    vanish again at ``q + 1``.
    """
    q = _check_nonneg("q", q)
    even = propagate_chain(-q, q + 2)
    for p, v in even.items():
        if v != b_closed_form(p, q):
            raise BCoefficientError(f"even chain: recurrence {v} != closed form at p={p}, q={q}")
    if even[q + 2] != 0:
        raise BCoefficientError(f"even chain does not close: b_sq({q + 2}) = {even[q + 2]}")

    odd = propagate_chain(-q + 1, q + 1)
    if odd[q + 1] != 0:
        raise BCoefficientError(f"odd chain does not close: b_sq({q + 1}) = {odd[q + 1]}")

    table = {**even, **odd}
    negative = {p: v for p, v in table.items() if v < 0}
    if negative:
        raise BCoefficientError(f"negative squared coefficients {negative}")
    return BCoefficients(q=q, b_sq=dict(sorted(table.items())))


class ReducedOperators(NamedTuple):
    q: int
    hbar: float
    qpt3: SparseOperator
    qpt_plus: SparseOperator
    qpt_minus: SparseOperator
    qpt1: SparseOperator
    qpt2: SparseOperator
    qpt4: SparseOperator

    @property
    def dim(self) -> int:
        return 2 * self.q + 1

    @property
    def pi_ops(self) -> tuple[SparseOperator, SparseOperator, SparseOperator]:
        return self.qpt1, self.qpt2, self.qpt3


def build_reduced_ops(q: int, hbar: float = 1.0) -> ReducedOperators:
    q = _check_nonneg("q", q)
    bc = b_coefficients(q)
    dim = 2 * q + 1
    plus, minus = {}, {}
    for p in range(-q, q + 1):
        col = p + q
        if p - 2 >= -q and bc.b_sq[p]:
            plus[p - 2 + q, col] = bc.b(p, hbar)
        if p + 2 <= q and bc.b_sq[p + 2]:
            minus[p + 2 + q, col] = bc.b(p + 2, hbar)
    qp = SparseOperator.from_entries(plus, dim=dim)
    qm = SparseOperator.from_entries(minus, dim=dim)
    return ReducedOperators(
        q=q,
        hbar=hbar,
        qpt3=SparseOperator.diagonal(hbar * np.arange(-q, q + 1, dtype=float)),
        qpt_plus=qp,
        qpt_minus=qm,
        qpt1=(qp + qm) * 0.5,
        qpt2=(qp - qm) * (1 / 2j),
        qpt4=SparseOperator.identity(dim) * (q * hbar),
    )


def verify_reduced_su2(q: int, tol: float = 1e-12, hbar: float = 1.0,
                       ops: ReducedOperators | None = None) -> VerificationReport:
    R = build_reduced_ops(q, hbar) if ops is None else ops
    h = R.hbar
    r = VerificationReport()
    tag = f"red q={R.q}"
    r.add_operator(f"{tag}: [Q+,Q-] = -4 hbar Q3", commutator(R.qpt_plus, R.qpt_minus) + (4 * h) * R.qpt3, tol)
    r.add_operator(f"{tag}: [Q1,Q2] = -i hbar 2 Q3", commutator(R.qpt1, R.qpt2) - (-2j * h) * R.qpt3, tol)
    r.add_operator(f"{tag}: [Q2,Q3] = -i hbar 2 Q1", commutator(R.qpt2, R.qpt3) - (-2j * h) * R.qpt1, tol)
    r.add_operator(f"{tag}: [Q1,Q3] = -i hbar (-2) Q2", commutator(R.qpt1, R.qpt3) - (2j * h) * R.qpt2, tol)
    for k, op in ((1, R.qpt1), (2, R.qpt2), (3, R.qpt3), (4, R.qpt4)):
        r.add_operator(f"{tag}: Q{k} self-adjoint", adjoint(op) - op, tol)
    r.add_operator(f"{tag}: Q+^dagger = Q-", adjoint(R.qpt_plus) - R.qpt_minus, tol)
    r.add_operator(f"{tag}: [Q4,Q3] = 0", commutator(R.qpt4, R.qpt3), tol)
    return r


def decompose_parity(q: int) -> tuple[list[int], list[int]]:
    """Values of ``p`` spanning ``H~_q^0`` (p = q mod 2) and ``H~_q^1``."""
    q = _check_nonneg("q", q)
    even = [p for p in range(-q, q + 1) if parity_chain(p, q) == EVEN]
    odd = [p for p in range(-q, q + 1) if parity_chain(p, q) == ODD]
    return even, odd


def parity_invariant(ops: ReducedOperators) -> bool:
    """True when every stored entry of every reduced operator connects same-parity ``p``."""
    for op in (ops.qpt1, ops.qpt2, ops.qpt3, ops.qpt4, ops.qpt_plus, ops.qpt_minus):
        coo = op.csr.tocoo()
        if np.any((coo.row - coo.col) % 2 != 0):
            return False
    return True


def chain_positions(q: int, chain: ChainTag) -> list[int]:
    even, odd = decompose_parity(q)
    return [p + q for p in (even if chain == EVEN else odd)]


def reduced_casimir(ops: ReducedOperators, chain: ChainTag | None = None) -> SparseOperator:
    """``Q1^2 + Q2^2 + Q3^2``, optionally restricted to one parity chain."""
    total = compose(ops.qpt1, ops.qpt1) + compose(ops.qpt2, ops.qpt2) + compose(ops.qpt3, ops.qpt3)
    if chain is None:
        return total
    return total.restrict(chain_positions(ops.q, chain))
