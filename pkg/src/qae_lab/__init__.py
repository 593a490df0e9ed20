"""Simulation toolkit for denoising entangled states with trainable networks.

Dense linear-algebra simulation of few-qubit circuits (exact density
matrices and shot-based sampling), layered autoencoder networks built from
perceptron unitaries, finite-difference training on noisy state pairs, and
a three-party secret-sharing protocol that the trained networks rescue
from depolarizing noise.
"""

from .config import (
    KINDS,
    ConfigError,
    ExperimentConfig,
    load_config,
    resolved_lines,
    validate_config,
)
from .experiments import run_experiment
from .model_io import load_model, read_table, save_model, write_table
from .network import (
    EXACT,
    QaeModel,
    Topology,
    apply_twice,
    circuit_qubits,
    forward_exact,
    forward_shot,
    generate,
    parameter_count,
    perceptron_unitary,
    perturb_parameters,
    swap_test_fidelity,
)
from .noise import (
    BITFLIP,
    DEPOLARIZING,
    ChannelSpec,
    Syndrome,
    all_syndromes,
    apply_syndrome,
    depolarize_exact,
    sample_syndrome,
    syndrome_probability,
    theoretical_fidelity,
    theoretical_fidelity_bitflip,
    theoretical_fidelity_qdc,
)
from .paulis import PauliString, build_generator, pauli_basis, pauli_coefficients, pauli_matrix
from .seeding import derive_seed_sequence, derive_stream
from .qss import (
    BASIS_X,
    BASIS_Y,
    CLEAN,
    DENOISED,
    GENERATED,
    NOISY,
    QssConfig,
    QssRound,
    brute_force_gamma,
    failure_rate,
    gamma_components,
    infer_charlie_bit,
    run_round,
    syndrome_failure_probability,
    theoretical_gamma,
)
from .states import (
    DensityMatrix,
    StateVector,
    UnitaryMatrix,
    apply_unitary,
    basis_state,
    embed_unitary,
    expm_hermitian,
    fidelity,
    ghz_state,
    measure_qubit,
    partial_trace,
    reset_qubits,
    tensor_states,
    zero_state,
)
from .training import (
    AdamState,
    EvalCounter,
    TrainingConfig,
    TrainingLog,
    TrainingPair,
    cost,
    evaluate,
    evaluate_perturbed,
    grad_fd,
    make_pairs,
    step_adam,
    step_vanilla,
    train,
)

__version__ = "0.1.0"
