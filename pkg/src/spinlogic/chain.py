"""Isotropic spin-1/2 chain: excitation sectors and nearest-neighbour exchange pulses.

Bond k couples spins k and k+1 with the always-on exchange form

    V_k = 2*pi * [ Sz_k Sz_{k+1} + (S+_k S-_{k+1} + S-_k S+_{k+1}) / 2 ]

so a pulse of duration t applies exp(-i V_k t) and t is dimensionless (one
full exchange period is t = 4, and t = 1/2 swaps the two spins up to a phase).

State conventions, used verbatim everywhere downstream:
  * basis patterns are integers; bit k is spin k, and a set bit means the
    spin is excited (|1>, Sz = -1/2);
  * printed bitstrings are big-endian, spin 0 rightmost, so pattern 3 on six
    spins reads "000011";
  * V_k conserves the excitation number, so work happens in fixed-popcount
    sectors enumerated in increasing pattern order.

On a sector basis the matrix rule is: diagonal +pi/2 when bits k, k+1 agree,
else -pi/2, plus an off-diagonal pi connecting the two patterns related by
swapping bits k and k+1.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg

MAX_SECTOR_SPINS = 10
MAX_FULL_SPINS = 8


@dataclass(frozen=True)
class Subspace:
    """A fixed-excitation sector (or the full space, n_excitations=None)."""

    n_spins: int
    n_excitations: int | None
    states: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.states)

    def index_of(self, pattern: int) -> int:
        try:
            return _pattern_index(self.states)[pattern]
        except KeyError:
            raise ValueError(f"pattern {pattern:#08b} is not in this subspace") from None

    def bitstring(self, pattern: int) -> str:
        return format(pattern, f"0{self.n_spins}b")


@lru_cache(maxsize=None)
def _pattern_index(states: tuple[int, ...]) -> dict[int, int]:
    return {s: i for i, s in enumerate(states)}


def enumerate_subspace(n_spins: int, n_excitations: int) -> Subspace:
    """All patterns of n_spins bits with exactly n_excitations set, ascending."""
    if not 1 <= n_spins <= MAX_SECTOR_SPINS:
        raise ValueError(f"n_spins must be in [1, {MAX_SECTOR_SPINS}], got {n_spins}")
    if not 0 <= n_excitations <= n_spins:
        raise ValueError(f"n_excitations must be in [0, {n_spins}], got {n_excitations}")
    states = tuple(p for p in range(1 << n_spins) if bin(p).count("1") == n_excitations)
    return Subspace(n_spins, n_excitations, states)


def full_space(n_spins: int) -> Subspace:
    if not 1 <= n_spins <= MAX_FULL_SPINS:
        raise ValueError(f"full-space evolution is capped at {MAX_FULL_SPINS} spins, got {n_spins}")
    return Subspace(n_spins, None, tuple(range(1 << n_spins)))


def build_bond_hamiltonian(bond: int, subspace: Subspace) -> np.ndarray:
    """Exchange generator of bond k on the subspace basis (real symmetric)."""
    if not 0 <= bond <= subspace.n_spins - 2:
        raise ValueError(
            f"bond {bond} needs spins {bond} and {bond + 1}; chain has {subspace.n_spins} spins"
        )
    dim = subspace.dim
    matrix = np.zeros((dim, dim))
    mask = (1 << bond) | (1 << (bond + 1))
    for row, pattern in enumerate(subspace.states):
        if ((pattern >> bond) & 1) == ((pattern >> (bond + 1)) & 1):
            matrix[row, row] = np.pi / 2
        else:
            matrix[row, row] = -np.pi / 2
            matrix[row, subspace.index_of(pattern ^ mask)] = np.pi
    return matrix


@lru_cache(maxsize=None)
def _bond_eigensystem_cached(bond: int, subspace: Subspace) -> tuple[np.ndarray, np.ndarray]:
    return linalg.eig_hermitian(build_bond_hamiltonian(bond, subspace))


def bond_eigensystem(bond: int, subspace: Subspace) -> tuple[np.ndarray, np.ndarray]:
    """Cached eigendecomposition of V_bond on the subspace. Do not mutate the result."""
    return _bond_eigensystem_cached(bond, subspace)


def apply_bond_pulse(bond: int, duration: float, state: np.ndarray, subspace: Subspace) -> np.ndarray:
    """exp(-i V_bond t) applied to a vector or a (dim, m) column block."""
    values, vectors = bond_eigensystem(bond, subspace)
    rotated = vectors.conj().T @ np.asarray(state, dtype=np.complex128)
    phases = np.exp(-1j * values * duration)
    if rotated.ndim == 2:
        return vectors @ (phases[:, None] * rotated)
    return vectors @ (phases * rotated)


def full_space_oracle(sequence, initial_state: np.ndarray) -> np.ndarray:
    """Evolve a full 2^n state vector through a pulse sequence, no sector shortcut.

    Cross-checks the sector evolution; the chain length is inferred from the
    state length, which must be a power of two with at most MAX_FULL_SPINS bits.
    """
    psi = np.asarray(initial_state, dtype=np.complex128)
    dim = psi.shape[0]
    n_spins = dim.bit_length() - 1
    if dim != 1 << n_spins:
        raise ValueError(f"state length {dim} is not a power of two")
    space = full_space(n_spins)
    for pulse in sequence:
        psi = apply_bond_pulse(pulse.bond, pulse.duration, psi, space)
    return psi


def sector_weight(full_state: np.ndarray, sector: Subspace) -> float:
    """Probability carried by a sector's patterns inside a full-space vector."""
    psi = np.asarray(full_state)
    return float(sum(abs(psi[p]) ** 2 for p in sector.states))


def embed_in_full_space(state: np.ndarray, sector: Subspace) -> np.ndarray:
    """Lift a sector vector to the full 2^n basis."""
    psi = np.zeros(1 << sector.n_spins, dtype=np.complex128)
    psi[list(sector.states)] = np.asarray(state, dtype=np.complex128)
    return psi


def restrict_to_sector(full_state: np.ndarray, sector: Subspace) -> np.ndarray:
    """Project a full-space vector onto a sector basis (drops the complement)."""
    psi = np.asarray(full_state, dtype=np.complex128)
    return psi[list(sector.states)].copy()
