"""Unsupervised training of denoising networks on noisy state pairs.

Pairs (input, target) are two independent draws from the same noise channel
acting on the clean preparation. The optimized cost is the mean fidelity
between each pair's target state and the network output on its input. The
per-epoch log tracks a different diagnostic: the mean fidelity of the
outputs against the clean preparation, which is what converges toward 1 on
a successful run (the pair cost itself plateaus at the largest eigenvalue
of the target mixture, e.g. (1-p)^2 + p^2 for two-qubit flip noise).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .network import (
    EXACT,
    QaeModel,
    Topology,
    _forward_exact_raw,
    parameter_count,
    perturb_parameters,
    swap_test_fidelity,
)
from .noise import ChannelSpec, Syndrome, apply_syndrome, sample_syndrome
from .states import StateVector, ghz_state

VANILLA = "vanilla"
ADAM = "adam"


@dataclass(frozen=True)
class TrainingPair:
    """Two independent channel samples applied to the same clean preparation."""

    input_syndrome: Syndrome
    target_syndrome: Syndrome

    def __post_init__(self):
        if self.input_syndrome.n_qubits != self.target_syndrome.n_qubits:
            raise ValueError("input and target syndromes must have equal length")


@dataclass(frozen=True)
class TrainingConfig:
    """Hyperparameters of one training run.

    shots is EXACT for analytic fidelities or a positive count for the
    sampled swap-test estimate. seed is carried as run metadata; the random
    stream itself is always passed explicitly.
    """

    epsilon: float = 0.1
    eta: float = 0.25
    shots: int | None = EXACT
    epochs: int = 150
    n_pairs: int = 100
    optimizer: str = VANILLA
    beta1: float = 0.9
    beta2: float = 0.999
    adam_epsilon: float = 1e-8
    init_sigma: float = 0.05
    seed: int = 0

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("finite-difference step must be > 0")
        if self.eta <= 0:
            raise ValueError("learning rate must be > 0")
        if self.epochs < 0:
            raise ValueError("epoch count must be >= 0")
        if self.n_pairs < 1:
            raise ValueError("pair count must be >= 1")
        if self.optimizer not in (VANILLA, ADAM):
            raise ValueError(f"unknown optimizer {self.optimizer!r}")
        if self.shots is not EXACT and self.shots < 1:
            raise ValueError("shot count must be >= 1")


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    train_fidelity: float
    val_fidelity: float
    elapsed_seconds: float


@dataclass(frozen=True)
class TrainingLog:
    """Per-epoch clean-state fidelities, measured on each epoch's starting
    parameters, plus cumulative wall time."""

    records: tuple[EpochRecord, ...]

    def final_train_fidelity(self):
        return self.records[-1].train_fidelity if self.records else float("nan")

    def first_crossing(self, threshold: float):
        """Earliest epoch whose training fidelity reaches threshold, or None."""
        for rec in self.records:
            if rec.train_fidelity >= threshold:
                return rec.epoch
        return None


class EvalCounter:
    """Counts cost evaluations, for complexity-accounting assertions."""

    def __init__(self):
        self.count = 0

    def tick(self):
        self.count += 1


def make_pairs(channel: ChannelSpec, m: int, n: int, rng) -> list[TrainingPair]:
    """Draw n pairs; input and target syndromes are independent samples."""
    if n < 1:
        raise ValueError("pair count must be >= 1")
    return [
        TrainingPair(sample_syndrome(channel, m, rng), sample_syndrome(channel, m, rng))
        for _ in range(n)
    ]


def _state_key(amps: np.ndarray) -> bytes:
    # Keyed on the projector so syndromes differing by a global phase share
    # one forward pass (e.g. YY and II both preserve the two-qubit GHZ).
    return np.round(np.outer(amps, amps.conj()), 12).tobytes()


@dataclass
class _InputClass:
    rho_in: np.ndarray
    input_amps: np.ndarray
    targets: list


def _group_pairs(pairs, m: int):
    """Bucket pairs by their input state's projector.

    Noise channels on the GHZ preparation produce only a handful of distinct
    input states (four for two-qubit depolarizing noise), so exact-mode cost
    evaluation needs one forward pass per class, not per pair.
    """
    ghz = ghz_state(m)
    groups: dict[bytes, _InputClass] = {}
    for pair in pairs:
        x = apply_syndrome(ghz, pair.input_syndrome).amplitudes
        y = apply_syndrome(ghz, pair.target_syndrome).amplitudes
        key = _state_key(x)
        if key not in groups:
            groups[key] = _InputClass(np.outer(x, x.conj()), x, [])
        groups[key].targets.append(y)
    classes = list(groups.values())
    for cls in classes:
        cls.targets = np.array(cls.targets)
    return classes


def _class_outputs(model: QaeModel, classes):
    return [_forward_exact_raw(model, cls.rho_in) for cls in classes]


def _cost_from_outputs(classes, outputs, n_pairs: int) -> float:
    total = 0.0
    for cls, rho in zip(classes, outputs):
        total += float(
            np.einsum("id,de,ie->", cls.targets.conj(), rho, cls.targets).real
        )
    return total / n_pairs


def _mean_fid_vs(classes, outputs, phi: np.ndarray, n_pairs: int) -> float:
    total = 0.0
    for cls, rho in zip(classes, outputs):
        total += len(cls.targets) * float(np.real(phi.conj() @ rho @ phi))
    return total / n_pairs


def _cost_exact(kappa, classes, topology, n_pairs, counter=None) -> float:
    if counter is not None:
        counter.tick()
    model = QaeModel(topology, kappa)
    return _cost_from_outputs(classes, _class_outputs(model, classes), n_pairs)


def _cost_shots(kappa, pairs, topology, shots, rng, counter=None) -> float:
    if counter is not None:
        counter.tick()
    model = QaeModel(topology, kappa)
    ghz = ghz_state(topology.n_in)
    total = 0.0
    for pair in pairs:
        x = apply_syndrome(ghz, pair.input_syndrome)
        y = apply_syndrome(ghz, pair.target_syndrome)
        total += swap_test_fidelity(model, x, y, shots, rng)
    return total / len(pairs)


def cost(kappa, pairs, topology: Topology, shots=EXACT, rng=None, counter=None) -> float:
    """Mean fidelity between each pair's target and the output on its input.

    Exact mode returns the analytic mean in [0, 1]; shot mode returns the
    swap-test estimate, whose sampling noise can leave that interval.
    """
    if not pairs:
        raise ValueError("cost needs at least one pair")
    kappa = np.asarray(kappa, dtype=float)
    if shots is EXACT:
        classes = _group_pairs(pairs, topology.n_in)
        return _cost_exact(kappa, classes, topology, len(pairs), counter)
    return _cost_shots(kappa, pairs, topology, shots, rng, counter)


def _grad_fd_grouped(kappa, eval_one, epsilon: float, base_cost=None) -> np.ndarray:
    if base_cost is None:
        base_cost = eval_one(kappa)
    grad = np.empty_like(kappa)
    for i in range(kappa.shape[0]):
        shifted = kappa.copy()
        shifted[i] += epsilon
        grad[i] = (eval_one(shifted) - base_cost) / epsilon
    return grad


def grad_fd(
    kappa,
    pairs,
    topology: Topology,
    epsilon: float,
    shots=EXACT,
    rng=None,
    base_cost=None,
    counter=None,
) -> np.ndarray:
    """Forward-difference gradient of the pair cost.

    Makes exactly len(kappa) + 1 cost evaluations (len(kappa) when the
    unshifted cost is supplied via base_cost). In shot mode every
    evaluation draws from its own derived stream, so component evaluations
    could run in any order with identical results.
    """
    if epsilon <= 0:
        raise ValueError("finite-difference step must be > 0")
    kappa = np.asarray(kappa, dtype=float)
    if shots is EXACT:
        classes = _group_pairs(pairs, topology.n_in)

        def eval_one(k):
            return _cost_exact(k, classes, topology, len(pairs), counter)

    else:
        streams = iter(rng.spawn(kappa.shape[0] + (1 if base_cost is None else 0)))

        def eval_one(k):
            return _cost_shots(k, pairs, topology, shots, next(streams), counter)

    return _grad_fd_grouped(kappa, eval_one, epsilon, base_cost)


def step_vanilla(kappa, grad, eta: float) -> np.ndarray:
    """Plain gradient-ascent update kappa + eta * grad."""
    kappa = np.asarray(kappa, dtype=float)
    grad = np.asarray(grad, dtype=float)
    if kappa.shape != grad.shape:
        raise ValueError("parameter and gradient lengths differ")
    return kappa + eta * grad


@dataclass(frozen=True)
class AdamState:
    """First/second moment accumulators and the step counter."""

    m: np.ndarray
    v: np.ndarray
    t: int

    @classmethod
    def fresh(cls, n: int) -> "AdamState":
        return cls(np.zeros(n), np.zeros(n), 0)


def step_adam(
    state: AdamState,
    kappa,
    grad,
    eta: float,
    beta1: float = 0.9,
    beta2: float = 0.999,
    adam_epsilon: float = 1e-8,
) -> tuple[AdamState, np.ndarray]:
    """Bias-corrected Adam update in the ascent direction."""
    kappa = np.asarray(kappa, dtype=float)
    grad = np.asarray(grad, dtype=float)
    if kappa.shape != grad.shape:
        raise ValueError("parameter and gradient lengths differ")
    t = state.t + 1
    m = beta1 * state.m + (1 - beta1) * grad
    v = beta2 * state.v + (1 - beta2) * grad**2
    m_hat = m / (1 - beta1**t)
    v_hat = v / (1 - beta2**t)
    updated = kappa + eta * m_hat / (np.sqrt(v_hat) + adam_epsilon)
    return AdamState(m, v, t), updated


def train(
    topology: Topology,
    channel: ChannelSpec,
    config: TrainingConfig,
    rng,
    counter=None,
) -> tuple[QaeModel, TrainingLog]:
    """Run the full training loop and return the model plus its epoch log.

    Each epoch costs exactly len(kappa) + 1 evaluations over the training
    pairs (tracked by counter if given): one unshifted, len(kappa) shifted.
    Validation pairs are drawn once up front, never refreshed. Logged
    fidelities are measured against the clean preparation on the epoch's
    starting parameters; in exact mode they reuse the unshifted forward
    passes, in shot mode they are separate swap-test estimates.
    """
    m = topology.n_in
    n_params = parameter_count(topology)
    kappa = rng.normal(0.0, config.init_sigma, n_params)
    train_pairs = make_pairs(channel, m, config.n_pairs, rng)
    val_pairs = make_pairs(channel, m, config.n_pairs, rng)
    ghz = ghz_state(m)

    exact = config.shots is EXACT
    train_classes = _group_pairs(train_pairs, m)
    val_classes = _group_pairs(val_pairs, m)

    adam_state = AdamState.fresh(n_params)
    records = []
    start = time.perf_counter()
    for epoch in range(1, config.epochs + 1):
        if exact:
            model = QaeModel(topology, kappa)
            if counter is not None:
                counter.tick()
            outputs = _class_outputs(model, train_classes)
            base_cost = _cost_from_outputs(train_classes, outputs, config.n_pairs)
            train_fid = _mean_fid_vs(
                train_classes, outputs, ghz.amplitudes, config.n_pairs
            )
            val_outputs = _class_outputs(model, val_classes)
            val_fid = _mean_fid_vs(
                val_classes, val_outputs, ghz.amplitudes, config.n_pairs
            )
            classes = train_classes

            def eval_one(k, classes=classes):
                return _cost_exact(k, classes, topology, config.n_pairs, counter)

            grad = _grad_fd_grouped(
                kappa, eval_one, config.epsilon, base_cost=base_cost
            )
        else:
            model = QaeModel(topology, kappa)
            base_stream, grad_stream, fid_stream = rng.spawn(3)
            base_cost = _cost_shots(
                kappa, train_pairs, topology, config.shots, base_stream, counter
            )
            train_fid = _shot_fid_vs_clean(
                model, train_pairs, ghz, config.shots, fid_stream
            )
            val_fid = _shot_fid_vs_clean(
                model, val_pairs, ghz, config.shots, fid_stream
            )
            grad = grad_fd(
                kappa,
                train_pairs,
                topology,
                config.epsilon,
                shots=config.shots,
                rng=grad_stream,
                base_cost=base_cost,
                counter=counter,
            )

        if config.optimizer == ADAM:
            adam_state, kappa = step_adam(
                adam_state,
                kappa,
                grad,
                config.eta,
                config.beta1,
                config.beta2,
                config.adam_epsilon,
            )
        else:
            kappa = step_vanilla(kappa, grad, config.eta)
        records.append(
            EpochRecord(epoch, train_fid, val_fid, time.perf_counter() - start)
        )

    log = TrainingLog(tuple(records))
    metadata = {
        "channel": channel.kind,
        "p": channel.p,
        "seed": config.seed,
        "epochs": config.epochs,
        "final_fidelity": log.final_train_fidelity(),
    }
    return QaeModel(topology, kappa, metadata), log


def _shot_fid_vs_clean(model, pairs, ghz, shots, rng) -> float:
    total = 0.0
    for pair in pairs:
        x = apply_syndrome(ghz, pair.input_syndrome)
        total += swap_test_fidelity(model, x, ghz, shots, rng)
    return total / len(pairs)


def evaluate(
    model: QaeModel, channel: ChannelSpec, n_states: int, rng, passes: int = 1
) -> tuple[float, float, list]:
    """Denoise n fresh noisy states; fidelity of each against the clean GHZ.

    Returns (mean, population standard deviation, per-state fidelities).
    passes=2 sends each state through the network twice.
    """
    if n_states < 1:
        raise ValueError("state count must be >= 1")
    if passes not in (1, 2):
        raise ValueError("passes must be 1 or 2")
    m = model.topology.n_in
    ghz = ghz_state(m)
    phi = ghz.amplitudes
    outputs: dict[bytes, float] = {}
    fids = []
    for _ in range(n_states):
        s = sample_syndrome(channel, m, rng)
        x = apply_syndrome(ghz, s).amplitudes
        key = _state_key(x)
        if key not in outputs:
            rho = _forward_exact_raw(model, np.outer(x, x.conj()))
            if passes == 2:
                rho = _forward_exact_raw(model, rho)
            outputs[key] = float(np.real(phi.conj() @ rho @ phi))
        fids.append(outputs[key])
    arr = np.array(fids)
    return float(arr.mean()), float(arr.std()), fids


def evaluate_perturbed(
    model: QaeModel, channel: ChannelSpec, n_states: int, sigma: float, rng
) -> tuple[float, float, list]:
    """Like evaluate, but each state runs through a freshly perturbed network.

    Models run-to-run gate noise: every test state draws its own Gaussian
    coefficient shift of width sigma before denoising.
    """
    if n_states < 1:
        raise ValueError("state count must be >= 1")
    m = model.topology.n_in
    ghz = ghz_state(m)
    phi = ghz.amplitudes
    fids = []
    for _ in range(n_states):
        s = sample_syndrome(channel, m, rng)
        x = apply_syndrome(ghz, s).amplitudes
        noisy_model = perturb_parameters(model, sigma, rng)
        rho = _forward_exact_raw(noisy_model, np.outer(x, x.conj()))
        fids.append(float(np.real(phi.conj() @ rho @ phi)))
    arr = np.array(fids)
    return float(arr.mean()), float(arr.std()), fids
