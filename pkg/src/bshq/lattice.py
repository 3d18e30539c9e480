"""Basis labels and Bohr-Sommerfeld sets for the oscillator and the reduced sphere."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, NamedTuple

EVEN = "even_rel_q"
ODD = "odd_rel_q"

ChainTag = Literal["even_rel_q", "odd_rel_q"]


class FockIndex(NamedTuple):
    """Oscillator basis label ``e_{m,n}``: quantum numbers of the two actions."""

    m: int
    n: int

    @property
    def shell(self) -> int:
        return self.m + self.n


class ReducedIndex(NamedTuple):
    """Reduced basis label ``e~_{p,q}`` with ``|p| <= q``."""

    p: int
    q: int


@dataclass(frozen=True)
class BSEntry:
    p: int
    kind: Literal["circle", "pole"]
    radius: float
    # radius**2 / hbar**2, kept exact
    radius_sq: int


@dataclass(frozen=True)
class BohrSommerfeldSetReduced:
    q: int
    hbar: float
    entries: tuple[BSEntry, ...]

    @property
    def circles(self) -> list[BSEntry]:
        return [e for e in self.entries if e.kind == "circle"]

    @property
    def poles(self) -> list[BSEntry]:
        return [e for e in self.entries if e.kind == "pole"]


def _check_nonneg(name: str, value: int) -> int:
    if isinstance(value, bool) or int(value) != value or value < 0:
        raise ValueError(f"{name} must be a nonnegative integer, got {value!r}")
    return int(value)


def oscillator_basis(n_max: int) -> list[FockIndex]:
    """All ``(m, n)`` with ``m + n <= n_max``, shell-major then ascending ``m``."""
    n_max = _check_nonneg("n_max", n_max)
    return [FockIndex(m, N - m) for N in range(n_max + 1) for m in range(N + 1)]


def basis_position(idx: FockIndex) -> int:
    """Position of ``idx`` inside :func:`oscillator_basis` (independent of the cutoff)."""
    N = idx.m + idx.n
    return N * (N + 1) // 2 + idx.m


def shell_slice(N: int) -> slice:
    """Slice of the oscillator basis occupied by shell ``m + n = N``."""
    start = N * (N + 1) // 2
    return slice(start, start + N + 1)


def bs_set_oscillator(n_max: int, hbar: float = 1.0) -> list[tuple[float, float]]:
    """Joint action values ``(m hbar, n hbar)`` below the cutoff, in basis order."""
    return [(m * hbar, n * hbar) for m, n in oscillator_basis(n_max)]


def reduced_basis(q: int) -> list[ReducedIndex]:
    q = _check_nonneg("q", q)
    return [ReducedIndex(p, q) for p in range(-q, q + 1)]


def bs_set_reduced(q: int, hbar: float = 1.0) -> BohrSommerfeldSetReduced:
    q = _check_nonneg("q", q)
    entries = []
    for p in range(-q, q + 1):
        r2 = q * q - p * p
        kind = "pole" if abs(p) == q else "circle"
        entries.append(BSEntry(p=p, kind=kind, radius=hbar * math.sqrt(r2), radius_sq=r2))
    return BohrSommerfeldSetReduced(q=q, hbar=hbar, entries=tuple(entries))


def parity_chain(p: int, q: int) -> ChainTag:
    """``even_rel_q`` when ``p = q (mod 2)``, otherwise ``odd_rel_q``."""
    q = _check_nonneg("q", q)
    if abs(p) > q:
        raise ValueError(f"|p| = {abs(p)} exceeds q = {q}")
    return EVEN if (p - q) % 2 == 0 else ODD
