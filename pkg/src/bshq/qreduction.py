"""Identification of the oscillator shell ``H_q`` with the even chain of ``H~_q``."""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import EVEN, FockIndex, ReducedIndex, _check_nonneg, parity_chain, shell_slice
from .opcore import SparseOperator, VerificationReport, commutant_dimension, compose, max_residual
from .osc_quant import OscillatorOperators, build_oscillator_ops
from .red_quant import ReducedOperators, build_reduced_ops, chain_positions, decompose_parity


@dataclass(frozen=True)
class Intertwiner:
    q: int
    forward: dict[FockIndex, ReducedIndex]
    #: (2q+1) x (q+1) matrix with 0/1 entries
    matrix: SparseOperator

    def inverse(self, idx: ReducedIndex) -> FockIndex:
        p, q = idx
        if q != self.q or parity_chain(p, q) != EVEN:
            raise ValueError(f"{idx} is not in the even chain of H~_{self.q}")
        return FockIndex((p + q) // 2, (q - p) // 2)

    @property
    def inverse_matrix(self) -> SparseOperator:
        """Left inverse ``H~_q^0 -> H_q`` (the transpose, since entries are 0/1)."""
        return SparseOperator(self.matrix.csr.T)


def build_intertwiner(q: int) -> Intertwiner:
    """``e_{m, q-m} -> e~_{2m-q, q}``; shell position ``m`` maps to reduced position ``2m``."""
    q = _check_nonneg("q", q)
    forward = {FockIndex(m, q - m): ReducedIndex(2 * m - q, q) for m in range(q + 1)}
    entries = {(2 * m, m): 1.0 for m in range(q + 1)}
    return Intertwiner(q=q, forward=forward,
                       matrix=SparseOperator.from_entries(entries, shape=(2 * q + 1, q + 1)))


def verify_intertwining(q: int, tol: float = 1e-12, hbar: float = 1.0,
                        osc: OscillatorOperators | None = None,
                        red: ReducedOperators | None = None) -> VerificationReport:
    osc = build_oscillator_ops(q, hbar) if osc is None else osc
    red = build_reduced_ops(q, hbar) if red is None else red
    if osc.n_max < q:
        raise ValueError(f"oscillator cutoff {osc.n_max} below shell {q}")
    I = build_intertwiner(q).matrix
    sl = shell_slice(q)
    r = VerificationReport()
    pairs = (
        ("Qpi~1 I = I Qpi1", red.qpt1, osc.qpi1),
        ("Qpi~2 I = I Qpi2", red.qpt2, osc.qpi2),
        ("Qpi~3 I = I Qpi3", red.qpt3, osc.qpi3),
        ("Qpi~4 I = I QE", red.qpt4, osc.qe),
        ("Qpi~3 I = I QL", red.qpt3, osc.ql),
    )
    for name, reduced, full in pairs:
        diff = compose(reduced, I) - compose(I, full.restrict(sl))
        r.add(f"intertwine q={q}: {name}", max_residual(diff), tol)
    return r


def round_trip_exact(q: int) -> bool:
    """Forward/inverse are mutually inverse on labels and as 0/1 matrices."""
    it = build_intertwiner(q)
    for fock, red in it.forward.items():
        if it.inverse(red) != fock or red.p != fock.m - fock.n:
            return False
    fwd, inv = it.matrix, it.inverse_matrix
    eye_h = SparseOperator.identity(q + 1)
    proj_even = SparseOperator.from_entries({(k, k): 1.0 for k in chain_positions(q, EVEN)}, dim=2 * q + 1)
    return compose(inv, fwd) == eye_h and compose(fwd, inv) == proj_even


def multiplicity_report(n_max: int, hbar: float = 1.0, commutant_qmax: int = 12) -> list[dict]:
    """Per-shell dimension bookkeeping for oscillator shells vs reduced spaces.

    Commutant dimensions are computed for ``q <= commutant_qmax`` and left as
    ``None`` above it (dense nullspace cost grows like ``q^6``).
    """
    n_max = _check_nonneg("n_max", n_max)
    osc = build_oscillator_ops(n_max, hbar)
    rows = []
    for q in range(n_max + 1):
        even, odd = decompose_parity(q)
        it = build_intertwiner(q)
        matched = len(set(it.forward.values()))
        row = {
            "q": q,
            "dim_Hq": q + 1,
            "dim_Hq0": len(even),
            "dim_Hq1": len(odd),
            "matched": matched,
            "surplus": len(odd),
            "surplus_only_in_reduced": len(odd) > 0,
            "commutant_Hq": None,
            "commutant_Hqtilde": None,
        }
        if q <= commutant_qmax:
            sl = shell_slice(q)
            row["commutant_Hq"] = commutant_dimension([p.restrict(sl) for p in osc.pi_ops])
            row["commutant_Hqtilde"] = commutant_dimension(list(build_reduced_ops(q, hbar).pi_ops))
        rows.append(row)
    return rows
