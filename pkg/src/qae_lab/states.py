"""Pure and mixed quantum states over qubit registers, and the operations on them.

Convention used throughout the package: qubit 0 is the leftmost tensor factor,
so basis-state index ``i`` carries qubit ``q``'s bit at position ``n - 1 - q``
of its binary expansion (qubit 0 is the most significant bit).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ATOL = 1e-9

# Single-qubit gate constants.
I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
S = np.array([[1, 0], [0, 1j]], dtype=complex)
S_DAG = S.conj().T

# Two-qubit gates on (qubit 0 = control/first, qubit 1 = target/second).
CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)


def _n_qubits_of(dim):
    n = int(dim).bit_length() - 1
    if 2**n != dim or n < 0:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


@dataclass(frozen=True)
class StateVector:
    """A pure n-qubit state: 2^n complex amplitudes with unit norm."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        _n_qubits_of(amps.shape[0])  # validates power-of-two length
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-8:
            raise ValueError(f"state vector norm {norm} is not 1")

    @property
    def n_qubits(self):
        return _n_qubits_of(self.amplitudes.shape[0])

    def to_density(self) -> "DensityMatrix":
        """Return the rank-one density matrix |psi><psi|."""
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class DensityMatrix:
    """A mixed n-qubit state: Hermitian, PSD, unit-trace 2^n x 2^n matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("density matrix must be square")
        _n_qubits_of(mat.shape[0])
        if np.abs(mat - mat.conj().T).max() > ATOL:
            raise ValueError("density matrix is not Hermitian")
        tr = np.trace(mat)
        if abs(tr - 1.0) > ATOL:
            raise ValueError(f"density matrix trace {tr} is not 1")

    @property
    def n_qubits(self):
        return _n_qubits_of(self.matrix.shape[0])

    def min_eigenvalue(self):
        return float(np.linalg.eigvalsh(self.matrix)[0])


@dataclass(frozen=True)
class UnitaryMatrix:
    """A unitary operator on n qubits."""

    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("unitary must be square")
        _n_qubits_of(mat.shape[0])
        defect = np.abs(mat.conj().T @ mat - np.eye(mat.shape[0])).max()
        if defect > 1e-9:
            raise ValueError(f"matrix is not unitary (defect {defect:.2e})")

    @property
    def n_qubits(self):
        return _n_qubits_of(self.matrix.shape[0])


def zero_state(n: int) -> StateVector:
    """The computational basis state |0...0> on n qubits."""
    if n < 1:
        raise ValueError("need at least one qubit")
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = 1.0
    return StateVector(amps)


def basis_state(n: int, index: int) -> StateVector:
    """The computational basis state with the given index on n qubits."""
    amps = np.zeros(2**n, dtype=complex)
    amps[index] = 1.0
    return StateVector(amps)


def ghz_state(m: int) -> StateVector:
    """The m-qubit GHZ state (|0...0> + |1...1>)/sqrt(2)."""
    if m < 1:
        raise ValueError("GHZ state needs m >= 1 qubits")
    amps = np.zeros(2**m, dtype=complex)
    amps[0] = amps[-1] = 1.0 / np.sqrt(2)
    return StateVector(amps)


def _check_targets(targets, n):
    targets = list(targets)
    if len(set(targets)) != len(targets):
        raise ValueError(f"duplicate target qubits in {targets}")
    for q in targets:
        if not 0 <= q < n:
            raise ValueError(f"target qubit {q} out of range for {n} qubits")
    return targets


def _reorder_index(order, n):
    """Map basis index i (qubit order 0..n-1) to its index under ``order`` + rest.

    Returned array ``out`` satisfies out[i] = index of i's bit pattern when the
    qubits are read in the order ``order`` followed by the remaining qubits
    ascending.
    """
    rest = [q for q in range(n) if q not in order]
    full = list(order) + rest
    idx = np.arange(2**n)
    out = np.zeros_like(idx)
    for pos, q in enumerate(full):
        bit = (idx >> (n - 1 - q)) & 1
        out |= bit << (n - 1 - pos)
    return out


def embed_unitary(u: np.ndarray, targets, n: int) -> np.ndarray:
    """Expand a k-qubit unitary to the full 2^n space, acting on ``targets``.

    ``targets[0]`` becomes the gate's most significant qubit.
    """
    targets = _check_targets(targets, n)
    k = _n_qubits_of(u.shape[0])
    if k != len(targets):
        raise ValueError(f"gate acts on {k} qubits but {len(targets)} targets given")
    if k == n and targets == list(range(n)):
        return np.asarray(u, dtype=complex)
    big = np.kron(u, np.eye(2 ** (n - k)))
    perm = _reorder_index(targets, n)
    return big[np.ix_(perm, perm)]


def apply_unitary(state, u, targets):
    """Apply a unitary to selected qubits of a StateVector or DensityMatrix.

    Density matrices transform as U rho U^dagger.
    """
    umat = u.matrix if isinstance(u, UnitaryMatrix) else np.asarray(u, dtype=complex)
    if isinstance(state, StateVector):
        full = embed_unitary(umat, targets, state.n_qubits)
        return StateVector(full @ state.amplitudes)
    if isinstance(state, DensityMatrix):
        full = embed_unitary(umat, targets, state.n_qubits)
        return DensityMatrix(full @ state.matrix @ full.conj().T)
    raise TypeError(f"cannot apply unitary to {type(state).__name__}")


def _partial_trace_raw(mat, keep, n):
    keep = list(keep)
    t = mat.reshape((2,) * (2 * n))
    # Row axis of qubit q is q, column axis is n + q; traced qubits share labels.
    row = list(range(n))
    col = [n + q if q in keep else q for q in range(n)]
    out = keep + [n + q for q in keep]
    k = len(keep)
    return np.einsum(t, row + col, out).reshape(2**k, 2**k)


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduced density matrix over ``keep`` (in the given order)."""
    keep = list(keep)
    if not keep:
        raise ValueError("must keep at least one qubit")
    _check_targets(keep, rho.n_qubits)
    return DensityMatrix(_partial_trace_raw(rho.matrix, keep, rho.n_qubits))


def tensor_states(a: DensityMatrix, b: DensityMatrix) -> DensityMatrix:
    """Tensor product a (x) b; b's qubits are appended after a's."""
    return DensityMatrix(np.kron(a.matrix, b.matrix))


def reset_qubits(rho: DensityMatrix, targets) -> DensityMatrix:
    """Trace out ``targets`` and re-tensor |0...0><0...0| at their positions."""
    n = rho.n_qubits
    targets = _check_targets(targets, n)
    if not targets:
        return rho
    keep = [q for q in range(n) if q not in targets]
    if not keep:
        return zero_state(n).to_density()
    reduced = _partial_trace_raw(rho.matrix, keep, n)
    zeros = np.zeros((2 ** len(targets), 2 ** len(targets)), dtype=complex)
    zeros[0, 0] = 1.0
    big = np.kron(reduced, zeros)  # qubit order: keep + targets
    perm = _reorder_index(keep, n)
    return DensityMatrix(big[np.ix_(perm, perm)])


def _measure_raw(amps, target, n, rng):
    """Sample one qubit of a raw amplitude vector; return (bit, collapsed)."""
    shaped = amps.reshape(2**target, 2, 2 ** (n - 1 - target))
    p1 = float(np.sum(np.abs(shaped[:, 1, :]) ** 2))
    bit = 1 if rng.random() < p1 else 0
    prob = p1 if bit else 1.0 - p1
    if prob <= 0.0:
        raise RuntimeError("measurement collapsed onto a zero-probability branch")
    collapsed = np.zeros_like(shaped)
    collapsed[:, bit, :] = shaped[:, bit, :] / np.sqrt(prob)
    return bit, collapsed.reshape(-1)


def measure_qubit(state: StateVector, target: int, rng) -> tuple[int, StateVector]:
    """Born-rule measurement of one qubit, collapsing the state."""
    n = state.n_qubits
    _check_targets([target], n)
    bit, amps = _measure_raw(state.amplitudes, target, n, rng)
    return bit, StateVector(amps)


def expm_hermitian(k_matrix: np.ndarray) -> UnitaryMatrix:
    """exp(i K) for Hermitian K, via eigendecomposition K = V L V^dagger."""
    k_matrix = np.asarray(k_matrix, dtype=complex)
    if np.abs(k_matrix - k_matrix.conj().T).max() > 1e-9:
        raise ValueError("generator is not Hermitian")
    evals, vecs = np.linalg.eigh(k_matrix)
    return UnitaryMatrix((vecs * np.exp(1j * evals)) @ vecs.conj().T)


def fidelity(phi: StateVector, rho: DensityMatrix) -> float:
    """Overlap <phi|rho|phi> between a pure target and a mixed state."""
    if phi.n_qubits != rho.n_qubits:
        raise ValueError(
            f"qubit count mismatch: {phi.n_qubits} vs {rho.n_qubits}"
        )
    val = phi.amplitudes.conj() @ rho.matrix @ phi.amplitudes
    if abs(val.imag) > 1e-9:
        raise ValueError(f"fidelity has non-negligible imaginary part {val.imag}")
    return float(min(max(val.real, 0.0), 1.0))
