"""Finite-dimensional sparse operator algebra and verification reports.

Operators are thin immutable wrappers around ``scipy.sparse`` CSR storage with
complex double entries.  Only exact zeros are pruned; near-zero round-off is
kept so that identity checks see it through :func:`max_residual`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.linalg
import scipy.sparse as sp

#: singular values below RANK_RTOL * sigma_max count as zero
RANK_RTOL = 1e-8


class DimensionError(ValueError):
    pass


class SparseOperator:
    """Linear map ``C^cols -> C^rows`` stored sparsely.

    Square operators are the common case; :attr:`dim` is only defined for them.
    """

    __slots__ = ("_m",)

    def __init__(self, matrix):
        m = sp.csr_array(matrix, dtype=np.complex128)
        m.sum_duplicates()
        m.eliminate_zeros()
        m.sort_indices()
        m.data.flags.writeable = False
        self._m = m

    # constructors -----------------------------------------------------------------
    @classmethod
    def from_entries(cls, entries: Mapping[tuple[int, int], complex], dim: int | None = None,
                     shape: tuple[int, int] | None = None) -> "SparseOperator":
        if shape is None:
            if dim is None:
                raise ValueError("need dim or shape")
            shape = (dim, dim)
        rows, cols = shape
        for (r, c) in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside shape {shape}")
        if entries:
            r, c = zip(*entries.keys())
            vals = np.fromiter(entries.values(), dtype=np.complex128, count=len(entries))
        else:
            r, c, vals = (), (), np.zeros(0, dtype=np.complex128)
        return cls(sp.coo_array((vals, (np.asarray(r, dtype=int), np.asarray(c, dtype=int))), shape=shape))

    @classmethod
    def identity(cls, dim: int) -> "SparseOperator":
        return cls(sp.identity(dim, dtype=np.complex128, format="csr"))

    @classmethod
    def zero(cls, rows: int, cols: int | None = None) -> "SparseOperator":
        return cls(sp.csr_array((rows, rows if cols is None else cols), dtype=np.complex128))

    @classmethod
    def diagonal(cls, values: Sequence[complex]) -> "SparseOperator":
        return cls(sp.diags_array(np.asarray(values, dtype=np.complex128), format="csr"))

    # properties -------------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self._m.shape

    @property
    def dim(self) -> int:
        rows, cols = self._m.shape
        if rows != cols:
            raise DimensionError(f"operator of shape {self.shape} is not square")
        return rows

    @property
    def nnz(self) -> int:
        return self._m.nnz

    @property
    def csr(self) -> sp.csr_array:
        return self._m

    @property
    def entries(self) -> dict[tuple[int, int], complex]:
        coo = self._m.tocoo()
        return {(int(r), int(c)): complex(v) for r, c, v in zip(coo.row, coo.col, coo.data)}

    def to_dense(self) -> np.ndarray:
        return self._m.toarray()

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self._m @ np.asarray(v, dtype=np.complex128)

    def restrict(self, rows: slice | Sequence[int], cols: slice | Sequence[int] | None = None) -> "SparseOperator":
        """Submatrix with the given row and column index sets (cols default to rows)."""
        if cols is None:
            cols = rows
        return SparseOperator(self._m[_as_index(rows, self.shape[0])][:, _as_index(cols, self.shape[1])])

    def is_diagonal(self) -> bool:
        coo = self._m.tocoo()
        return bool(np.all(coo.row == coo.col))

    def diagonal_values(self) -> np.ndarray:
        return self._m.diagonal()

    # arithmetic -------------------------------------------------------------------
    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        _same_shape(self, other)
        return SparseOperator(self._m + other._m)

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        _same_shape(self, other)
        return SparseOperator(self._m - other._m)

    def __neg__(self) -> "SparseOperator":
        return SparseOperator(-self._m)

    def __mul__(self, scalar: complex) -> "SparseOperator":
        if isinstance(scalar, SparseOperator):
            raise TypeError("use @ or compose() for operator products")
        return SparseOperator(self._m * complex(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar: complex) -> "SparseOperator":
        return SparseOperator(self._m / complex(scalar))

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        return compose(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseOperator):
            return NotImplemented
        return self.shape == other.shape and (self._m != other._m).nnz == 0

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"SparseOperator(shape={self.shape}, nnz={self.nnz})"


def _as_index(ix, n):
    if isinstance(ix, slice):
        return np.arange(n)[ix]
    return np.asarray(ix, dtype=int)


def _same_shape(a: SparseOperator, b: SparseOperator) -> None:
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")


def compose(a: SparseOperator, b: SparseOperator) -> SparseOperator:
    """``a o b``: apply ``b`` first."""
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot compose {a.shape} with {b.shape}")
    return SparseOperator(a.csr @ b.csr)


def adjoint(a: SparseOperator) -> SparseOperator:
    return SparseOperator(a.csr.conj().T)


def commutator(a: SparseOperator, b: SparseOperator) -> SparseOperator:
    _same_shape(a, b)
    a.dim  # square check
    return SparseOperator(a.csr @ b.csr - b.csr @ a.csr)


def max_residual(a: SparseOperator) -> float:
    if a.nnz == 0:
        return 0.0
    return float(np.max(np.abs(a.csr.data)))


def sylvester_stack(ops: Sequence[SparseOperator]) -> sp.csr_array:
    """Stacked matrix of ``X -> X A - A X`` over ``ops``, acting on row-major ``vec(X)``."""
    d = ops[0].dim
    eye = sp.identity(d, dtype=np.complex128, format="csr")
    blocks = []
    for op in ops:
        if op.dim != d:
            raise DimensionError("all operators must share one dimension")
        A = op.csr
        # row-major vec: vec(X A) = (I kron A^T) vec X ; vec(A X) = (A kron I) vec X
        blocks.append(sp.kron(eye, A.T) - sp.kron(A, eye))
    return sp.vstack(blocks, format="csr")


def commutant_dimension(ops: Sequence[SparseOperator], rtol: float = RANK_RTOL) -> int:
    """Dimension of ``{X : [X, A] = 0 for every A in ops}``.

    Computed as the nullity of the stacked Sylvester system by dense SVD, so it
    is meant for ``dim`` up to a few dozen.
    """
    ops = list(ops)
    if not ops:
        raise ValueError("commutant of an empty operator list is undefined here")
    d = ops[0].dim
    K = sylvester_stack(ops).toarray()
    s = scipy.linalg.svdvals(K)
    if s.size == 0 or s[0] == 0.0:
        return d * d
    rank = int(np.sum(s > rtol * s[0]))
    return d * d - rank


# ---------------------------------------------------------------------------------
# verification reports


@dataclass(frozen=True)
class Check:
    name: str
    max_abs_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.max_abs_residual <= self.tolerance)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "residual": float(self.max_abs_residual),
            "tolerance": float(self.tolerance),
            "pass": self.passed,
        }


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, residual: float, tolerance: float) -> Check:
        chk = Check(name, float(residual), float(tolerance))
        self.checks.append(chk)
        return chk

    def add_operator(self, name: str, difference: SparseOperator, tolerance: float) -> Check:
        return self.add(name, max_residual(difference), tolerance)

    def extend(self, other: "VerificationReport | Iterable[Check]") -> "VerificationReport":
        self.checks.extend(other.checks if isinstance(other, VerificationReport) else other)
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def summary(self) -> dict:
        n_fail = len(self.failures)
        return {"passed": len(self.checks) - n_fail, "failed": n_fail}

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self) -> list[str]:
        return [c.name for c in self.checks]
