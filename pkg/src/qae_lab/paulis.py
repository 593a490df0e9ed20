"""Pauli tensor-product strings and assembly of Hermitian generators.

The canonical coefficient ordering is base-4 lexicographic: letter I=0, X=1,
Y=2, Z=3, with qubit 0 as the most significant digit. Serialized models rely
on this ordering, so it is part of the model file format.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .states import I2, X, Y, Z

LETTERS = "IXYZ"
_MATRICES = {"I": I2, "X": X, "Y": Y, "Z": Z}


@dataclass(frozen=True)
class PauliString:
    """One element of {I,X,Y,Z}^n, qubit 0 first."""

    letters: str

    def __post_init__(self):
        if not self.letters or any(c not in LETTERS for c in self.letters):
            raise ValueError(f"invalid Pauli string {self.letters!r}")

    @property
    def n_qubits(self):
        return len(self.letters)

    def index(self) -> int:
        """Base-4 index of this string (I=0, X=1, Y=2, Z=3)."""
        idx = 0
        for c in self.letters:
            idx = 4 * idx + LETTERS.index(c)
        return idx

    @classmethod
    def from_index(cls, index: int, n: int) -> "PauliString":
        if not 0 <= index < 4**n:
            raise ValueError(f"index {index} out of range for {n} qubits")
        digits = []
        for _ in range(n):
            digits.append(LETTERS[index % 4])
            index //= 4
        return cls("".join(reversed(digits)))


def pauli_matrix(s: PauliString) -> np.ndarray:
    """Tensor product of the single-qubit matrices, in qubit order."""
    mat = _MATRICES[s.letters[0]]
    for c in s.letters[1:]:
        mat = np.kron(mat, _MATRICES[c])
    return mat


@lru_cache(maxsize=8)
def pauli_basis(n: int) -> np.ndarray:
    """All 4^n Pauli matrices stacked in canonical order, shape (4^n, 2^n, 2^n)."""
    stack = np.empty((4**n, 2**n, 2**n), dtype=complex)
    for idx in range(4**n):
        stack[idx] = pauli_matrix(PauliString.from_index(idx, n))
    stack.setflags(write=False)
    return stack


def build_generator(coeffs, n: int) -> np.ndarray:
    """K = sum_sigma coeffs[index(sigma)] * sigma, Hermitian by construction.

    Only nonzero coefficients contribute a term, so evaluations that perturb a
    single coefficient stay cheap.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.shape != (4**n,):
        raise ValueError(
            f"expected {4**n} coefficients for {n} qubits, got {coeffs.shape}"
        )
    basis = pauli_basis(n)
    k_matrix = np.zeros((2**n, 2**n), dtype=complex)
    active = np.nonzero(coeffs)[0]
    for idx in active:
        k_matrix += coeffs[idx] * basis[idx]
    return k_matrix


def pauli_coefficients(k_matrix: np.ndarray, n: int) -> np.ndarray:
    """Recover k_sigma = Tr(K sigma) / 2^n for every Pauli string."""
    basis = pauli_basis(n)
    return np.real(np.einsum("sij,ji->s", basis, k_matrix)) / 2**n
