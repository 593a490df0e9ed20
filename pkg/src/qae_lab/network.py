"""Layered quantum autoencoder networks built from trainable perceptron unitaries.

A network of shape [m_1, ..., m_l] connects consecutive layers with one
perceptron unitary per output qubit. Each perceptron acts on all m_i input
qubits plus its own output qubit and is exp(i K), where K is a real
combination of the 4^(m_i+1) Pauli strings on those qubits.

Coefficient vector layout (normative, shared with the model file format):
layer transition by layer transition, then perceptron by perceptron in
ascending output-qubit order, then base-4 Pauli index ascending. Within one
transition the perceptrons are applied in ascending output-qubit order; they
generally do not commute, so this order is part of the model definition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .paulis import build_generator
from .states import (
    DensityMatrix,
    StateVector,
    SWAP,
    UnitaryMatrix,
    _measure_raw,
    _partial_trace_raw,
    embed_unitary,
    expm_hermitian,
    zero_state,
)

# Sentinel for analytic (infinite-shot) fidelity estimation.
EXACT = None


@dataclass(frozen=True)
class Topology:
    """Layer sizes [m_1, ..., m_l] of a network."""

    layer_sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(m) for m in self.layer_sizes)
        object.__setattr__(self, "layer_sizes", sizes)
        if len(sizes) < 2:
            raise ValueError("a network needs at least two layers")
        if any(m < 1 for m in sizes):
            raise ValueError(f"layer sizes must be >= 1, got {sizes}")

    @property
    def n_in(self):
        return self.layer_sizes[0]

    @property
    def n_out(self):
        return self.layer_sizes[-1]

    def transitions(self):
        """Consecutive (m_in, m_out) layer pairs."""
        return list(zip(self.layer_sizes, self.layer_sizes[1:]))


def parameter_count(t: Topology) -> int:
    """Total trainable coefficients: sum over transitions of m_out * 4^(m_in+1)."""
    return sum(m_out * 4 ** (m_in + 1) for m_in, m_out in t.transitions())


def circuit_qubits(t: Topology) -> tuple[int, int]:
    """Width w = max(m_i + m_{i+1}) and training-circuit size Q = 1 + m_1 + w."""
    w = max(m_in + m_out for m_in, m_out in t.transitions())
    return w, 1 + t.n_in + w


def coefficient_layout(t: Topology):
    """Per-transition list of (m_in, m_out, [slice per perceptron]) into kappa."""
    layout = []
    offset = 0
    for m_in, m_out in t.transitions():
        block = 4 ** (m_in + 1)
        slices = []
        for _ in range(m_out):
            slices.append(slice(offset, offset + block))
            offset += block
        layout.append((m_in, m_out, slices))
    return layout


@dataclass(frozen=True)
class QaeModel:
    """A network topology with its flat coefficient vector and run metadata."""

    topology: Topology
    kappa: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        kappa = np.asarray(self.kappa, dtype=float)
        kappa.setflags(write=False)
        object.__setattr__(self, "kappa", kappa)
        expected = parameter_count(self.topology)
        if kappa.shape != (expected,):
            raise ValueError(
                f"kappa has length {kappa.shape}, topology needs {expected}"
            )

    def with_kappa(self, kappa) -> "QaeModel":
        return QaeModel(self.topology, kappa, dict(self.metadata))


def perceptron_unitary(coeffs, m: int) -> UnitaryMatrix:
    """exp(i K) on m+1 qubits, K assembled from 4^(m+1) Pauli coefficients."""
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.shape != (4 ** (m + 1),):
        raise ValueError(
            f"perceptron on {m} input qubits needs {4 ** (m + 1)} coefficients"
        )
    return expm_hermitian(build_generator(coeffs, m + 1))


@lru_cache(maxsize=16384)
def _transition_matrix(m_in: int, m_out: int, data: bytes) -> np.ndarray:
    """Product of the transition's perceptrons, embedded on m_in + m_out qubits.

    ``data`` is the transition's coefficient block as raw float64 bytes.
    Perceptron j acts on qubits [0..m_in-1] plus m_in + j; ascending-j
    application order means the product is U_{m_out} ... U_2 U_1.
    """
    coeffs = np.frombuffer(data, dtype=float)
    block = 4 ** (m_in + 1)
    n_reg = m_in + m_out
    total = np.eye(2**n_reg, dtype=complex)
    for j in range(m_out):
        u = perceptron_unitary(coeffs[j * block : (j + 1) * block], m_in)
        targets = list(range(m_in)) + [m_in + j]
        total = embed_unitary(u.matrix, targets, n_reg) @ total
    total.setflags(write=False)
    return total


def transition_matrices(model: QaeModel) -> list[np.ndarray]:
    """One combined unitary per layer transition, cached by coefficient bytes."""
    mats = []
    for m_in, m_out, slices in coefficient_layout(model.topology):
        data = np.ascontiguousarray(
            model.kappa[slices[0].start : slices[-1].stop]
        ).tobytes()
        mats.append(_transition_matrix(m_in, m_out, data))
    return mats


def _forward_exact_raw(model: QaeModel, rho: np.ndarray) -> np.ndarray:
    for (m_in, m_out), w in zip(model.topology.transitions(), transition_matrices(model)):
        fresh = np.zeros((2**m_out, 2**m_out), dtype=complex)
        fresh[0, 0] = 1.0
        rho = np.kron(rho, fresh)
        rho = w @ rho @ w.conj().T
        rho = _partial_trace_raw(rho, list(range(m_in, m_in + m_out)), m_in + m_out)
    return rho


def forward_exact(model: QaeModel, rho_in: DensityMatrix) -> DensityMatrix:
    """Exact density-matrix pass: fresh |0>'s in, perceptrons, inputs traced out."""
    if rho_in.n_qubits != model.topology.n_in:
        raise ValueError(
            f"input has {rho_in.n_qubits} qubits, network takes {model.topology.n_in}"
        )
    return DensityMatrix(_forward_exact_raw(model, rho_in.matrix))


def forward_shot(model: QaeModel, input_state: StateVector, rng) -> StateVector:
    """One shot of the reset-based circuit; returns the collapsed output state.

    Each reset is a measurement followed by a conditional flip back to |0>,
    so a single shot stays a pure state throughout. Averaging the output
    projector over shots converges to forward_exact.
    """
    if input_state.n_qubits != model.topology.n_in:
        raise ValueError(
            f"input has {input_state.n_qubits} qubits, network takes {model.topology.n_in}"
        )
    psi = input_state.amplitudes
    for (m_in, m_out), w in zip(model.topology.transitions(), transition_matrices(model)):
        fresh = np.zeros(2**m_out, dtype=complex)
        fresh[0] = 1.0
        psi = w @ np.kron(psi, fresh)
        # Reset the spent input qubits: measure each, then drop the register.
        block = 0
        for q in range(m_in):
            bit, psi = _measure_raw(psi, q, m_in + m_out, rng)
            block = (block << 1) | bit
        psi = np.ascontiguousarray(psi.reshape(2**m_in, 2**m_out)[block])
    return StateVector(psi)


@lru_cache(maxsize=64)
def _fredkin(n: int, control: int, a: int, b: int) -> np.ndarray:
    gate = np.zeros((8, 8), dtype=complex)
    gate[:4, :4] = np.eye(4)
    gate[4:, 4:] = SWAP
    return embed_unitary(gate, [control, a, b], n)


@lru_cache(maxsize=32)
def _swap_test_circuit(m: int) -> np.ndarray:
    """H on the ancilla, controlled-SWAP of two m-qubit registers, H again.

    Register layout: qubit 0 ancilla, qubits 1..m reference, m+1..2m output.
    """
    n = 1 + 2 * m
    h = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    h_full = embed_unitary(h, [0], n)
    total = h_full.copy()
    for i in range(m):
        total = _fredkin(n, 0, 1 + i, 1 + m + i) @ total
    total = h_full @ total
    total.setflags(write=False)
    return total


def swap_test_fidelity(
    model: QaeModel,
    input_state: StateVector,
    target_state: StateVector,
    shots,
    rng=None,
) -> float:
    """Fidelity between the network output and a pure target, via the swap test.

    The full training circuit is simulated: input preparation, the network
    with resets, target preparation on the reference register, then an
    ancilla-controlled SWAP between reference and output registers. The
    ancilla measures 0 with probability p0 = (1 + F)/2; the returned value is
    2 p0 - 1. Pass shots=EXACT for the analytic infinite-shot limit, or a
    positive shot count S for the empirical estimate 2 (#zeros / S) - 1.
    """
    m = model.topology.n_out
    if target_state.n_qubits != m:
        raise ValueError(
            f"target has {target_state.n_qubits} qubits, network outputs {m}"
        )
    circuit = _swap_test_circuit(m)
    n_joint = 1 + 2 * m
    anc0 = np.array([1.0, 0.0], dtype=complex)

    if shots is EXACT:
        rho_out = _forward_exact_raw(model, input_state.to_density().matrix)
        joint = np.kron(
            np.outer(anc0, anc0), np.kron(target_state.to_density().matrix, rho_out)
        )
        final = circuit @ joint @ circuit.conj().T
        diag = np.real(np.diag(final))
        p0 = float(np.sum(diag[: 2 ** (n_joint - 1)]))  # ancilla bit is the MSB
        return 2.0 * p0 - 1.0

    if shots < 1:
        raise ValueError("shot count must be >= 1")
    if rng is None:
        raise ValueError("shot-based estimation needs an rng")
    zeros = 0
    prefix = np.kron(anc0, target_state.amplitudes)
    for _ in range(shots):
        out = forward_shot(model, input_state, rng)
        joint = circuit @ np.kron(prefix, out.amplitudes)
        bit, _ = _measure_raw(joint, 0, n_joint, rng)
        zeros += 1 - bit
    return 2.0 * zeros / shots - 1.0


def generate(model: QaeModel) -> DensityMatrix:
    """Run the network on |0...0>, using it as a generative model."""
    return forward_exact(model, zero_state(model.topology.n_in).to_density())


def apply_twice(model: QaeModel, rho_in: DensityMatrix) -> DensityMatrix:
    """Compose the network with itself (requires matching input/output sizes)."""
    if model.topology.n_in != model.topology.n_out:
        raise ValueError("network output size must match its input size")
    return forward_exact(model, forward_exact(model, rho_in))


def perturb_parameters(model: QaeModel, sigma: float, rng) -> QaeModel:
    """Gaussian coefficient noise: each k gets an independent N(0, sigma^2) shift.

    The perturbed unitaries are exp(i(K + delta)), rebuilt from the shifted
    coefficients rather than composed as exp(i delta) exp(i K).
    """
    if sigma < 0:
        raise ValueError("noise standard deviation must be >= 0")
    delta = rng.normal(0.0, sigma, size=model.kappa.shape[0]) if sigma > 0 else 0.0
    return model.with_kappa(model.kappa + delta)
