"""Dense Hermitian linear algebra for small pulse generators.

Everything downstream evolves states with unitaries exp(-i H t) built from
exact eigendecompositions of small real-symmetric bond Hamiltonians, so this
module only has to do three things well: validate Hermiticity, diagonalize,
and exponentiate. Eigenvalues are always returned in ascending order with
orthonormal eigenvector columns.
"""
from __future__ import annotations

import numpy as np

HERMITIAN_ATOL = 1e-12
UNITARY_ATOL = 1e-10


def max_asymmetry(matrix: np.ndarray) -> float:
    """Largest entrywise deviation |H - H^dagger|."""
    m = np.asarray(matrix)
    return float(np.abs(m - m.conj().T).max())


def require_hermitian(matrix: np.ndarray, atol: float = HERMITIAN_ATOL) -> np.ndarray:
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] == 0:
        raise ValueError("empty matrix has no spectrum")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains non-finite entries")
    gap = max_asymmetry(m)
    if gap > atol:
        raise ValueError(f"matrix is not Hermitian: max|H - H^dagger| = {gap:.3e} > {atol:.1e}")
    return m


def eig_hermitian(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvector columns of a Hermitian matrix."""
    m = require_hermitian(matrix)
    values, vectors = np.linalg.eigh(m)
    return values, vectors


def propagator(matrix: np.ndarray, duration: float) -> np.ndarray:
    """Unitary exp(-i H t) of a Hermitian generator H.

    Negative durations are legal and give the inverse evolution.
    """
    if not np.isfinite(duration):
        raise ValueError(f"duration must be finite, got {duration!r}")
    values, vectors = eig_hermitian(matrix)
    phases = np.exp(-1j * values * duration)
    return (vectors * phases) @ vectors.conj().T


def apply(unitary: np.ndarray, state: np.ndarray) -> np.ndarray:
    """Apply a square operator to a state vector (or a column block of states)."""
    u = np.asarray(unitary)
    psi = np.asarray(state, dtype=np.complex128)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"expected a square operator, got shape {u.shape}")
    if psi.shape[0] != u.shape[1]:
        raise ValueError(f"dimension mismatch: operator {u.shape} on state of length {psi.shape[0]}")
    return u @ psi


def is_unitary(matrix: np.ndarray, atol: float = UNITARY_ATOL) -> bool:
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    gram = m.conj().T @ m
    return bool(np.abs(gram - np.eye(m.shape[0])).max() <= atol)
