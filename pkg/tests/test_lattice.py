import pytest
from hypothesis import given, strategies as st

from bshq.lattice import (
    EVEN, ODD, FockIndex, basis_position, bs_set_oscillator, bs_set_reduced, oscillator_basis,
    parity_chain, reduced_basis, shell_slice,
)


def test_oscillator_basis_small():
    assert oscillator_basis(0) == [(0, 0)]
    assert oscillator_basis(1) == [(0, 0), (0, 1), (1, 0)]
    assert len(oscillator_basis(2)) == 6


@given(st.integers(0, 40))
def test_basis_positions_match_enumeration(n_max):
    basis = oscillator_basis(n_max)
    assert len(basis) == (n_max + 1) * (n_max + 2) // 2
    assert [basis_position(b) for b in basis] == list(range(len(basis)))
    for N in range(n_max + 1):
        assert all(b.shell == N for b in basis[shell_slice(N)])


def test_oscillator_basis_rejects_negative():
    with pytest.raises(ValueError):
        oscillator_basis(-1)


def test_bs_set_oscillator():
    assert set(bs_set_oscillator(1)) == {(0, 0), (0, 1), (1, 0)}
    assert bs_set_oscillator(0) == [(0, 0)]
    pts = bs_set_oscillator(3)
    assert len(pts) == 10 and all(a + b <= 3 for a, b in pts)
    assert bs_set_oscillator(2, hbar=0.5)[-1] == (1.0, 0.0)


def test_bs_set_reduced():
    s = bs_set_reduced(3)
    assert len(s.entries) == 7
    assert [e.p for e in s.circles] == [-2, -1, 0, 1, 2]
    assert [e.p for e in s.poles] == [-3, 3]
    z = bs_set_reduced(0)
    assert len(z.entries) == 1 and z.poles[0].p == 0
    c = next(e for e in bs_set_reduced(2, hbar=1.5).entries if e.p == 0)
    assert c.kind == "circle" and c.radius_sq == 4 and c.radius == pytest.approx(3.0)


def test_parity_chain():
    assert parity_chain(3, 3) == EVEN
    assert parity_chain(2, 3) == ODD
    assert parity_chain(0, 0) == EVEN
    with pytest.raises(ValueError):
        parity_chain(4, 3)


@given(st.integers(0, 60))
def test_reduced_basis_chain_sizes(q):
    labels = reduced_basis(q)
    assert len(labels) == 2 * q + 1
    even = [r for r in labels if parity_chain(r.p, q) == EVEN]
    assert len(even) == q + 1


def test_fock_index_shell():
    assert FockIndex(2, 3).shell == 5
