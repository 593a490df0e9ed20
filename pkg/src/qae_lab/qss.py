"""Three-party secret sharing on GHZ triplets, with noise and denoising.

Alice, Bob, and Charlie each hold one qubit of a GHZ triplet (Alice is
qubit 0, Charlie qubit 2) and measure in a randomly chosen X or Y basis.
Rounds whose basis triple contains an even number of Y choices are valid:
Alice and Bob can then jointly infer Charlie's bit. Depolarizing noise on
the triplet makes the inference fail with probability gamma(p); passing the
noisy triplet through a trained denoising network first lowers that rate.

Bit convention: outcome 0 is the +1 eigenstate of the measured basis,
outcome 1 the -1 eigenstate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .network import QaeModel, forward_exact, forward_shot, generate
from .noise import (
    DEPOLARIZING,
    ChannelSpec,
    Syndrome,
    all_syndromes,
    apply_syndrome,
    sample_syndrome,
    syndrome_probability,
)
from .states import H, S_DAG, ghz_state, zero_state

BASIS_X = "X"
BASIS_Y = "Y"

CLEAN = "clean"
NOISY = "noisy"
DENOISED = "denoised"
GENERATED = "generated"
MODES = (CLEAN, NOISY, DENOISED, GENERATED)

# The four basis triples with an even number of Y measurements.
VALID_TRIPLES = (
    (BASIS_X, BASIS_X, BASIS_X),
    (BASIS_Y, BASIS_Y, BASIS_X),
    (BASIS_X, BASIS_Y, BASIS_Y),
    (BASIS_Y, BASIS_X, BASIS_Y),
)

# Measuring in X is H then a computational measurement; in Y it is S-dagger,
# then H, then the measurement. Composed left to right these give:
_ROTATION = {BASIS_X: H, BASIS_Y: H @ S_DAG}


@dataclass(frozen=True)
class QssRound:
    """One protocol round: basis choices, outcomes, and the inference result."""

    bases: tuple
    bits: tuple
    valid: bool
    inferred_charlie: int | None = None
    failed: bool | None = None


@dataclass(frozen=True)
class QssConfig:
    rounds: int
    p: float = 0.0
    mode: str = NOISY
    seed: int = 0

    def __post_init__(self):
        if self.rounds < 1:
            raise ValueError("round count must be >= 1")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"noise strength must be in [0, 1], got {self.p}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")


def is_valid_triple(bases) -> bool:
    return sum(1 for b in bases if b == BASIS_Y) % 2 == 0


def infer_charlie_bit(basis_a, bit_a, basis_b, bit_b, basis_c) -> int:
    """Alice and Bob's joint guess of Charlie's bit.

    All-X rounds give the XOR of their bits; valid rounds with two Y
    measurements give its negation.
    """
    bases = (basis_a, basis_b, basis_c)
    if any(b not in (BASIS_X, BASIS_Y) for b in bases):
        raise ValueError(f"bases must be X or Y, got {bases}")
    if not is_valid_triple(bases):
        raise ValueError(f"basis triple {bases} carries no inferable bit")
    parity = bit_a ^ bit_b
    return parity if bases == VALID_TRIPLES[0] else 1 - parity


@lru_cache(maxsize=8)
def _triple_rotation(bases) -> np.ndarray:
    rot = np.kron(
        np.kron(_ROTATION[bases[0]], _ROTATION[bases[1]]), _ROTATION[bases[2]]
    )
    rot.setflags(write=False)
    return rot


def _outcome_probabilities(state, bases) -> np.ndarray:
    rot = _triple_rotation(tuple(bases))
    if state.ndim == 1:
        return np.abs(rot @ state) ** 2
    return np.real(np.diag(rot @ state @ rot.conj().T))


def _sample_index(probs: np.ndarray, rng) -> int:
    edges = np.cumsum(probs)
    return min(int(np.searchsorted(edges, rng.random() * edges[-1], side="right")), 7)


def _check_model(model):
    if model is None:
        raise ValueError("denoised and generated modes need a model")
    if model.topology.n_in != 3 or model.topology.n_out != 3:
        raise ValueError("the protocol needs a 3-qubit-in, 3-qubit-out model")


def run_round(
    config: QssConfig, rng, model: QaeModel | None = None, shot_resets: bool = False
) -> QssRound:
    """Play one round and record outcomes plus the inference verdict.

    Draw order per round: channel syndrome (noisy and denoised modes), the
    three basis picks, then the measurement outcome. With shot_resets the
    denoised and generated modes run the network as a single reset-based
    shot instead of the exact density-matrix pass.
    """
    if config.mode in (DENOISED, GENERATED):
        _check_model(model)

    if config.mode == GENERATED:
        if shot_resets:
            state = forward_shot(model, zero_state(3), rng).amplitudes
        else:
            state = generate(model).matrix
    else:
        psi = ghz_state(3)
        if config.mode in (NOISY, DENOISED):
            s = sample_syndrome(ChannelSpec(DEPOLARIZING, config.p), 3, rng)
            psi = apply_syndrome(psi, s)
        if config.mode == DENOISED:
            if shot_resets:
                state = forward_shot(model, psi, rng).amplitudes
            else:
                state = forward_exact(model, psi.to_density()).matrix
        else:
            state = psi.amplitudes

    bases = tuple(BASIS_Y if pick else BASIS_X for pick in rng.integers(0, 2, size=3))
    probs = _outcome_probabilities(state, bases)
    index = _sample_index(probs, rng)
    bits = ((index >> 2) & 1, (index >> 1) & 1, index & 1)

    if not is_valid_triple(bases):
        return QssRound(bases, bits, False)
    inferred = infer_charlie_bit(bases[0], bits[0], bases[1], bits[1], bases[2])
    return QssRound(bases, bits, True, inferred, inferred != bits[2])


def failure_rate(
    config: QssConfig, rng, model: QaeModel | None = None, shot_resets: bool = False
):
    """Empirical failure fraction among valid rounds, and the key length.

    Returns (rate, valid_rounds); rate is None when no round was valid.
    """
    failures = 0
    valid = 0
    for _ in range(config.rounds):
        rnd = run_round(config, rng, model, shot_resets)
        if rnd.valid:
            valid += 1
            failures += int(rnd.failed)
    rate = failures / valid if valid else None
    return rate, valid


def theoretical_gamma(p: float) -> float:
    """Failure probability of a valid round under per-qubit depolarizing noise."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"noise strength must be in [0, 1], got {p}")
    return 0.5 * p * (p * p - 3.0 * p + 3.0)


def gamma_components(p: float):
    """Conditional failure probabilities given Charlie's qubit error (I, X, Y, Z).

    Weighting them by (1 - 3p/4, p/4, p/4, p/4) recovers theoretical_gamma.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"noise strength must be in [0, 1], got {p}")
    gamma_i = p * (1.0 - p / 2.0)
    gamma_z = 1.0 - p + p * p / 2.0
    return gamma_i, 0.5, 0.5, gamma_z


def syndrome_failure_probability(s: Syndrome) -> float:
    """Exact failure probability of a valid round after a fixed 3-qubit error.

    Averages over the four valid basis triples (uniform) and the exact
    outcome distribution of the corrupted triplet. Noise-strength
    independent; the channel only weights how often each syndrome occurs.
    """
    if s.n_qubits != 3:
        raise ValueError("the protocol uses 3-qubit syndromes")
    psi = apply_syndrome(ghz_state(3), s).amplitudes
    total = 0.0
    for triple in VALID_TRIPLES:
        probs = _outcome_probabilities(psi, triple)
        for index in range(8):
            bits = ((index >> 2) & 1, (index >> 1) & 1, index & 1)
            inferred = infer_charlie_bit(triple[0], bits[0], triple[1], bits[1], triple[2])
            if inferred != bits[2]:
                total += 0.25 * float(probs[index])
    return total


def brute_force_gamma(p: float) -> float:
    """Failure probability by full enumeration, no combinatorial shortcuts.

    Sums syndrome_failure_probability over all 64 syndromes weighted by
    their channel probabilities. Serves as the independent check of the
    closed form in theoretical_gamma.
    """
    spec = ChannelSpec(DEPOLARIZING, p)
    return sum(
        syndrome_probability(spec, s) * syndrome_failure_probability(s)
        for s in all_syndromes(3)
    )
