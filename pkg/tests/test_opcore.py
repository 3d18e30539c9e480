import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from bshq.opcore import (
    Check, DimensionError, SparseOperator, VerificationReport, adjoint, commutant_dimension, commutator,
    compose, max_residual,
)

complex_el = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


def dense_ops(d):
    return arrays(np.complex128, (d, d), elements=complex_el)


def commutant_oracle(mats):
    """Nullspace of the column-major Sylvester system, built with numpy only."""
    d = mats[0].shape[0]
    eye = np.eye(d)
    K = np.vstack([np.kron(eye, A) - np.kron(A.T, eye) for A in mats])
    return scipy.linalg.null_space(K, rcond=1e-8).shape[1]


def shift_up(d):
    return SparseOperator.from_entries({(k + 1, k): 1.0 for k in range(d - 1)}, dim=d)


def test_compose_examples():
    x = SparseOperator.from_entries({(0, 1): 2 + 1j, (2, 2): -3.0}, dim=3)
    assert compose(SparseOperator.identity(3), x) == x
    up = shift_up(4)
    occ = compose(up, adjoint(up))
    assert occ.is_diagonal()
    assert np.array_equal(occ.diagonal_values(), [0, 1, 1, 1])
    assert compose(x, SparseOperator.zero(3)).nnz == 0


def test_compose_shape_mismatch():
    with pytest.raises(DimensionError):
        compose(SparseOperator.identity(2), SparseOperator.identity(3))
    with pytest.raises(DimensionError):
        commutator(SparseOperator.identity(2), SparseOperator.identity(3))


@settings(max_examples=50, deadline=None)
@given(dense_ops(5), dense_ops(5))
def test_compose_matches_dense(a, b):
    got = compose(SparseOperator(a), SparseOperator(b)).to_dense()
    assert np.allclose(got, a @ b, atol=1e-9)
    assert np.allclose(commutator(SparseOperator(a), SparseOperator(b)).to_dense(), a @ b - b @ a, atol=1e-9)


def test_adjoint_examples():
    d = SparseOperator.diagonal([1.0, -2.0, 5.0])
    assert adjoint(d) == d
    a = SparseOperator.from_entries({(0, 2): 2 + 1j}, dim=3)
    assert adjoint(a).entries == {(2, 0): 2 - 1j}


@given(dense_ops(4))
def test_adjoint_involution(m):
    a = SparseOperator(m)
    assert adjoint(adjoint(a)) == a


def test_commutator_examples():
    a = SparseOperator.from_entries({(0, 1): 1.0, (1, 0): 3j}, dim=2)
    assert commutator(a, a).nnz == 0
    assert commutator(SparseOperator.diagonal([1, 2]), SparseOperator.diagonal([3j, 4])).nnz == 0
    E1 = SparseOperator(np.array([[0, 1j], [1j, 0]]))
    E2 = SparseOperator(np.array([[0, -1], [1, 0]]))
    E3 = SparseOperator(np.array([[1j, 0], [0, -1j]]))
    assert commutator(E1, E2) == 2 * E3


def test_max_residual():
    assert max_residual(SparseOperator.zero(3)) == 0.0
    assert max_residual(SparseOperator.from_entries({(1, 1): 3 - 4j}, dim=2)) == 5.0
    a = SparseOperator(np.arange(9).reshape(3, 3) * 1j)
    assert max_residual(a - a) == 0.0


def test_exact_zero_pruning_keeps_roundoff():
    a = SparseOperator.from_entries({(0, 0): 1e-300, (1, 1): 0.0}, dim=2)
    assert a.nnz == 1


def test_data_is_read_only():
    a = SparseOperator.identity(2)
    with pytest.raises(ValueError):
        a.csr.data[0] = 5


def test_operator_times_operator_is_rejected():
    with pytest.raises(TypeError):
        SparseOperator.identity(2) * SparseOperator.identity(2)


def test_restrict_and_dim():
    a = SparseOperator(np.arange(16).reshape(4, 4))
    assert np.array_equal(a.restrict(slice(1, 3)).to_dense(), [[5, 6], [9, 10]])
    rect = a.restrict([0], [1, 2, 3])
    assert rect.shape == (1, 3)
    with pytest.raises(DimensionError):
        rect.dim


def test_from_entries_bounds():
    with pytest.raises(IndexError):
        SparseOperator.from_entries({(3, 0): 1.0}, dim=3)
    with pytest.raises(ValueError):
        SparseOperator.from_entries({})


def test_commutant_examples():
    assert commutant_dimension([SparseOperator.identity(3)]) == 9
    with pytest.raises(ValueError):
        commutant_dimension([])


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_commutant_matches_oracle(d, seed):
    r = np.random.default_rng(seed)
    # block structure makes the commutant nontrivial
    k = r.integers(1, d + 1)
    mats = []
    for _ in range(2):
        m = np.zeros((d, d), dtype=complex)
        m[:k, :k] = r.normal(size=(k, k)) + 1j * r.normal(size=(k, k))
        m[k:, k:] = r.normal(size=(d - k, d - k))
        mats.append(m)
    assert commutant_dimension([SparseOperator(m) for m in mats]) == commutant_oracle(mats)


def test_report_bookkeeping():
    r = VerificationReport()
    r.add("a", 1e-14, 1e-12)
    r.add_operator("b", SparseOperator.from_entries({(0, 0): 1.0}, dim=1), 1e-12)
    assert not r.passed
    assert r.summary() == {"passed": 1, "failed": 1}
    assert [c.name for c in r.failures] == ["b"]
    assert r["a"].as_dict() == {"name": "a", "residual": 1e-14, "tolerance": 1e-12, "pass": True}
    with pytest.raises(KeyError):
        r["missing"]
    r.extend([Check("c", 0.0, 0.0)])
    assert r.names() == ["a", "b", "c"]
