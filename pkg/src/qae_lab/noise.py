"""Noise channel samplers, exact channel application, and closed-form fidelity oracles.

Two channels are modeled. The bit-flip channel applies X to each qubit
independently with probability p. The depolarizing channel applies exactly one
of I, X, Y, Z to each qubit independently, with probabilities
(1 - 3p/4, p/4, p/4, p/4); its mixture form (1-p) rho + p I/2^m is implemented
through this per-qubit Pauli form, which is the one the closed-form fidelity
below is derived from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .paulis import LETTERS, PauliString
from .states import DensityMatrix, StateVector, X, Y, Z, apply_unitary, embed_unitary

BITFLIP = "bitflip"
DEPOLARIZING = "depolarizing"


class Syndrome(PauliString):
    """The per-qubit Pauli error pattern realized in one channel sample."""


@dataclass(frozen=True)
class ChannelSpec:
    """A noise channel: kind ('bitflip' or 'depolarizing') and strength p."""

    kind: str
    p: float

    def __post_init__(self):
        if self.kind not in (BITFLIP, DEPOLARIZING):
            raise ValueError(f"unknown channel kind {self.kind!r}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"noise strength {self.p} outside [0, 1]")


def sample_syndrome(spec: ChannelSpec, m: int, rng) -> Syndrome:
    """Draw one per-qubit error pattern from the channel."""
    u = rng.random(m)
    if spec.kind == BITFLIP:
        letters = "".join("X" if ui < spec.p else "I" for ui in u)
    else:
        # Cumulative thresholds for (I, X, Y, Z) = (1 - 3p/4, p/4, p/4, p/4).
        quarter = spec.p / 4.0
        edges = (1.0 - 3.0 * quarter, 1.0 - 2.0 * quarter, 1.0 - quarter)
        letters = "".join(LETTERS[int(np.searchsorted(edges, ui, side="right"))] for ui in u)
    return Syndrome(letters)


def syndrome_probability(spec: ChannelSpec, s: Syndrome) -> float:
    """Probability of drawing this exact pattern from the channel."""
    prob = 1.0
    if spec.kind == BITFLIP:
        for c in s.letters:
            if c == "I":
                prob *= 1.0 - spec.p
            elif c == "X":
                prob *= spec.p
            else:
                return 0.0
    else:
        quarter = spec.p / 4.0
        for c in s.letters:
            prob *= 1.0 - 3.0 * quarter if c == "I" else quarter
    return prob


def all_syndromes(m: int):
    """All 4^m error patterns in canonical order."""
    return [Syndrome("".join(ls)) for ls in product(LETTERS, repeat=m)]


def apply_syndrome(state: StateVector, s: Syndrome) -> StateVector:
    """Apply the pattern's single-qubit Paulis to a pure state."""
    if s.n_qubits != state.n_qubits:
        raise ValueError(
            f"syndrome on {s.n_qubits} qubits applied to {state.n_qubits}-qubit state"
        )
    mats = {"X": X, "Y": Y, "Z": Z}
    for q, c in enumerate(s.letters):
        if c != "I":
            state = apply_unitary(state, mats[c], [q])
    return state


def depolarize_exact(rho: DensityMatrix, p: float) -> DensityMatrix:
    """Apply the depolarizing channel exactly, qubit by qubit."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"noise strength {p} outside [0, 1]")
    n = rho.n_qubits
    mat = rho.matrix
    quarter = p / 4.0
    for q in range(n):
        flipped = np.zeros_like(mat)
        for pauli in (X, Y, Z):
            full = embed_unitary(pauli, [q], n)
            flipped += full @ mat @ full.conj().T
        mat = (1.0 - 3.0 * quarter) * mat + quarter * flipped
    return DensityMatrix(mat)


def theoretical_fidelity_bitflip(m: int, p: float) -> float:
    """Fidelity of a bit-flipped GHZ state with the clean one: (1-p)^m + p^m.

    GHZ survives (up to phase) exactly when zero or all qubits flip.
    """
    if m < 1:
        raise ValueError("need m >= 1 qubits")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"noise strength {p} outside [0, 1]")
    return (1.0 - p) ** m + p**m


def theoretical_fidelity_qdc(m: int, p: float) -> float:
    """Fidelity of a depolarized GHZ state with the clean one.

    GHZ survives up to a global phase in exactly two families of patterns: an
    even number of Z's with the rest I, or an even number of Y's with the rest
    X; summing their probabilities gives

        sum_{k even} C(m,k) (p/4)^k (1 - 3p/4)^(m-k)  +  2^(m-1) (p/4)^m.
    """
    if m < 1:
        raise ValueError("need m >= 1 qubits")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"noise strength {p} outside [0, 1]")
    quarter = p / 4.0
    even_sum = sum(
        math.comb(m, k) * quarter**k * (1.0 - 3.0 * quarter) ** (m - k)
        for k in range(0, m + 1, 2)
    )
    return even_sum + 2 ** (m - 1) * quarter**m


def theoretical_fidelity(spec: ChannelSpec, m: int) -> float:
    """Closed-form noisy-GHZ fidelity for the given channel."""
    if spec.kind == BITFLIP:
        return theoretical_fidelity_bitflip(m, spec.p)
    return theoretical_fidelity_qdc(m, spec.p)
