"""End-to-end acceptance gates for the whole toolkit.

Each test covers one headline claim, from closed-form oracles through live
training runs to the secret-sharing rescue, and prints a single PASS line
with the measured numbers when it holds. Thresholds sit where the physics
puts them, with slack only for initialization and sampling variance. The
live training tests dominate the runtime (a few minutes total).
"""

import dataclasses
import itertools
import math
import statistics
from pathlib import Path

import numpy as np
import pytest

from qae_lab.config import load_config
from qae_lab.experiments import run_experiment
from qae_lab.model_io import format_cell, load_model, read_table
from qae_lab.network import (
    QaeModel,
    Topology,
    forward_exact,
    generate,
    parameter_count,
    swap_test_fidelity,
)
from qae_lab.noise import (
    BITFLIP,
    DEPOLARIZING,
    ChannelSpec,
    all_syndromes,
    apply_syndrome,
    sample_syndrome,
    theoretical_fidelity_qdc,
)
from qae_lab.qss import (
    Syndrome,
    VALID_TRIPLES,
    brute_force_gamma,
    infer_charlie_bit,
    syndrome_failure_probability,
    theoretical_gamma,
)
from qae_lab.seeding import derive_stream
from qae_lab.states import fidelity, ghz_state
from qae_lab.training import TrainingConfig, evaluate, train

ROOT = Path(__file__).resolve().parent.parent
CONFIGS = ROOT / "configs"
MODELS = ROOT / "models"

P_GRID_21 = [round(0.05 * k, 2) for k in range(21)]


def _pass(label: str, detail: str):
    print(f"PASS {label}: {detail}")


def _run_into(tmp_path, config_name: str, **overrides):
    """Run a shipped config with its output redirected to tmp_path."""
    config = load_config(CONFIGS / config_name)
    config = dataclasses.replace(config, output_dir=str(tmp_path), **overrides)
    run_experiment(config)
    return config


def _rows(path, key=None):
    _, rows = read_table(path)
    if key is None:
        return rows
    return {row[key]: row for row in rows}


class TestClosedFormOracles:
    def test_depolarizing_fidelity_formula_matches_enumeration(self):
        """Closed-form mean fidelity under per-qubit depolarizing noise
        against direct enumeration of all 4^m error patterns."""
        worst = 0.0
        for m in (2, 3, 4):
            ghz = ghz_state(m)
            for p in P_GRID_21:
                total = 0.0
                for s in all_syndromes(m):
                    # per qubit the state is replaced by I/2 with probability
                    # p, so identity carries 1 - 3p/4 and each error p/4
                    weight = 1.0
                    for letter in s.letters:
                        weight *= (1.0 - 0.75 * p) if letter == "I" else 0.25 * p
                    corrupted = apply_syndrome(ghz, s)
                    total += weight * abs(np.vdot(ghz.amplitudes, corrupted.amplitudes)) ** 2
                worst = max(worst, abs(total - theoretical_fidelity_qdc(m, p)))
        assert worst < 1e-12
        _pass("depolarizing fidelity oracle",
              f"m in (2,3,4), 21-point grid, max |enumeration - formula| = {worst:.2e}")

    def test_failure_rate_formula_matches_enumeration(self):
        """Closed-form secret-sharing failure curve against 64-syndrome
        enumeration, plus the exact two-party error table with the third
        qubit untouched."""
        worst = max(
            abs(brute_force_gamma(p) - 0.5 * p * (p * p - 3.0 * p + 3.0))
            for p in P_GRID_21
        )
        assert worst < 1e-12

        table_worst = 0.0
        for a, b in itertools.product("IXYZ", repeat=2):
            if (a, b) in (("I", "I"), ("Z", "Z")):
                expected = 0.0
            elif (a, b) in (("I", "Z"), ("Z", "I")):
                expected = 1.0
            else:
                expected = 0.5
            got = syndrome_failure_probability(Syndrome(a + b + "I"))
            table_worst = max(table_worst, abs(got - expected))
        assert table_worst < 1e-12
        _pass("failure rate oracle",
              f"21-point grid max dev {worst:.2e}, "
              f"16-case error table max dev {table_worst:.2e}")


class TestMeasurementAlgebra:
    H = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / math.sqrt(2.0)
    SDG = np.diag([1.0, -1.0j])
    X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
    Z = np.diag([1.0, -1.0]).astype(complex)
    XP = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)
    XM = np.array([1.0, -1.0], dtype=complex) / math.sqrt(2.0)
    YP = np.array([1.0, 1.0j]) / math.sqrt(2.0)
    YM = np.array([1.0, -1.0j]) / math.sqrt(2.0)

    def test_basis_expansion_has_quarter_weight_terms(self):
        """In each of the four kept basis combinations, the three-qubit GHZ
        state expands into exactly the four outcomes satisfying the parity
        rule, every one with amplitude magnitude 1/2."""
        ghz = ghz_state(3).amplitudes
        rot = {"X": self.H, "Y": self.H @ self.SDG}
        worst = 0.0
        for triple in VALID_TRIPLES:
            unitary = np.kron(np.kron(rot[triple[0]], rot[triple[1]]), rot[triple[2]])
            amps = unitary @ ghz
            for index in range(8):
                bits = ((index >> 2) & 1, (index >> 1) & 1, index & 1)
                consistent = bits[2] == infer_charlie_bit(
                    triple[0], bits[0], triple[1], bits[1], triple[2]
                )
                expected = 0.5 if consistent else 0.0
                worst = max(worst, abs(abs(amps[index]) - expected))
        assert worst < 1e-12
        _pass("basis expansion",
              f"4 bases x 8 outcomes, max |amplitude| deviation {worst:.2e}")

    def test_operator_action_identities_hold_with_phases(self):
        """All twelve single-qubit error actions on the measurement
        eigenstates, including the imaginary phases."""
        cases = [
            (self.X, self.XP, self.XP), (self.X, self.XM, -self.XM),
            (self.X, self.YP, 1.0j * self.YM), (self.X, self.YM, -1.0j * self.YP),
            (self.Y, self.XP, -1.0j * self.XM), (self.Y, self.XM, 1.0j * self.XP),
            (self.Y, self.YP, self.YP), (self.Y, self.YM, -self.YM),
            (self.Z, self.XP, self.XM), (self.Z, self.XM, self.XP),
            (self.Z, self.YP, self.YM), (self.Z, self.YM, self.YP),
        ]
        worst = max(
            float(np.max(np.abs(op @ vec - expected))) for op, vec, expected in cases
        )
        assert worst < 1e-12
        _pass("operator identities", f"12 identities, max deviation {worst:.2e}")


class TestSwapTestContract:
    def test_exact_circuit_matches_state_overlap(self):
        """Full circuit simulation of the fidelity readout against the
        direct overlap, for 50 random parameter draws."""
        rng = np.random.default_rng(2024)
        topology = Topology((2, 1, 2))
        ghz = ghz_state(2)
        spec = ChannelSpec(DEPOLARIZING, 0.3)
        worst = 0.0
        for _ in range(50):
            model = QaeModel(topology, rng.normal(0.0, 0.5, parameter_count(topology)))
            noisy = apply_syndrome(ghz, sample_syndrome(spec, 2, rng))
            estimate = swap_test_fidelity(model, noisy, ghz, shots=None)
            direct = fidelity(ghz, forward_exact(model, noisy.to_density()))
            # the circuit reads out p0 = (1 + F) / 2
            worst = max(worst, abs((1.0 + estimate) / 2.0 - (1.0 + direct) / 2.0))
        assert worst < 1e-10
        _pass("swap test, exact", f"50 random draws, max |p0 - (1+F)/2| = {worst:.2e}")

    def test_sampled_circuit_stays_within_binomial_bounds(self):
        """1000-shot estimates land inside 3-sigma binomial bounds in at
        least 99 of 100 trials."""
        rng = np.random.default_rng(99)
        topology = Topology((2, 1, 2))
        ghz = ghz_state(2)
        spec = ChannelSpec(DEPOLARIZING, 0.3)
        shots = 1000
        hits = 0
        for _ in range(100):
            model = QaeModel(topology, rng.normal(0.0, 0.5, parameter_count(topology)))
            noisy = apply_syndrome(ghz, sample_syndrome(spec, 2, rng))
            exact_p0 = (1.0 + swap_test_fidelity(model, noisy, ghz, shots=None)) / 2.0
            sampled_p0 = (1.0 + swap_test_fidelity(model, noisy, ghz, shots, rng)) / 2.0
            bound = 3.0 * math.sqrt(exact_p0 * (1.0 - exact_p0) / shots)
            if abs(sampled_p0 - exact_p0) <= bound:
                hits += 1
        assert hits >= 99
        _pass("swap test, sampled", f"{hits}/100 trials within 3 sigma at S={shots}")


class TestTrainingGates:
    def test_bitflip_training_reaches_target(self, tmp_path):
        """Live run of the reference bit-flip setting: final training
        fidelity and mean fidelity on 200 fresh noisy states both >= 0.95."""
        config = _run_into(tmp_path, "train_bitflip_212.toml")
        log_rows = _rows(tmp_path / "training_log_p0.2_s1.csv")
        assert len(log_rows) == config.training.epochs
        final = float(log_rows[-1]["train_fidelity"])
        assert final >= 0.95

        model = load_model(tmp_path / "model_p0.2_s1.json")
        spec = ChannelSpec(BITFLIP, 0.2)
        mean, _, _ = evaluate(model, spec, 200, derive_stream(0, "evaluate", 200000, 1))
        assert mean >= 0.95
        _pass("bit-flip training", f"final {final:.4f}, 200-state mean {mean:.4f}")

    def test_harder_noise_takes_longer_to_learn(self):
        """Median epoch at which training fidelity first crosses 0.9 is
        non-decreasing across bit-flip strengths 0.1, 0.2, 0.3 (5 seeds)."""
        topology = Topology((2, 1, 2))
        medians = []
        for p in (0.1, 0.2, 0.3):
            crossings = []
            for seed in range(5):
                rng = derive_stream(seed, "train", BITFLIP, int(round(p * 1e6)))
                config = TrainingConfig(seed=seed)
                _, log = train(topology, ChannelSpec(BITFLIP, p), config, rng)
                crossing = log.first_crossing(0.9)
                crossings.append(math.inf if crossing is None else crossing)
            medians.append(statistics.median(crossings))
        assert medians[0] <= medians[1] <= medians[2]
        _pass("convergence ordering",
              f"median crossing epochs {medians} for p = (0.1, 0.2, 0.3)")


class TestTrainedModelGates:
    def test_sweep_stays_flat_and_reference_column_is_exact(self, tmp_path):
        """The depolarizing model trained at p = 0.2 holds its fidelity
        within 0.05 across p = 0.1 .. 0.9, and the emitted closed-form
        column reproduces the oracle digit for digit."""
        _run_into(tmp_path, "sweep_qdc_212.toml")
        rows = _rows(tmp_path / "sweep.csv", key="p")
        base = float(rows["0.2"]["mean_fidelity"])
        worst = 0.0
        for cell, row in rows.items():
            worst = max(worst, abs(float(row["mean_fidelity"]) - base))
            assert row["theoretical_fidelity"] == format_cell(
                theoretical_fidelity_qdc(2, float(cell))
            )
        assert worst <= 0.05
        _pass("robustness sweep",
              f"base {base:.4f}, max |mean - base| = {worst:.4f} over 9 points, "
              f"closed-form column exact")

    def test_generated_states_match_target(self):
        """Both checked-in models rebuild their target state from the
        vacuum at fidelity >= 0.9."""
        fids = {}
        for name, m in (("qdc_212", 2), ("qdc_313", 3)):
            model = load_model(MODELS / f"{name}.json")
            fids[name] = fidelity(ghz_state(m), generate(model))
            assert fids[name] >= 0.9
        _pass("generative mode",
              f"[2,1,2] {fids['qdc_212']:.4f}, [3,1,3] {fids['qdc_313']:.4f}")

    def test_coefficient_noise_robustness(self, tmp_path):
        """Gaussian coefficient noise: sigma = 0.03 keeps the mean denoised
        fidelity >= 0.9 on 200 states at p = 0.3, and sigma = 0.1 still
        beats the raw noisy state."""
        _run_into(tmp_path, "gate_noise_212.toml")
        rows = _rows(tmp_path / "gate_noise.csv", key="sigma")
        small = float(rows["0.03"]["mean_fidelity"])
        large = float(rows["0.1"]["mean_fidelity"])
        raw = float(rows["0.1"]["noisy_theoretical_fidelity"])
        assert small >= 0.9
        assert large > raw
        _pass("coefficient noise",
              f"sigma 0.03 mean {small:.4f}, sigma 0.1 mean {large:.4f} "
              f"vs raw {raw:.4f}")


class TestSecretSharingGates:
    def test_noisy_protocol_tracks_formula(self, tmp_path):
        """Empirical failure rates over 1000 rounds per strength stay
        within 3-sigma binomial bounds of the closed form; the clean
        baseline never fails and keeps about half the rounds."""
        _run_into(tmp_path, "qss_noisy.toml")
        _, rows = read_table(tmp_path / "qss.csv")
        checked = 0
        for row in rows:
            if row["mode"] != "noisy":
                continue
            gamma = theoretical_gamma(float(row["p"]))
            valid = int(row["valid_rounds"])
            rate = float(row["empirical_failure_rate"])
            bound = 3.0 * math.sqrt(gamma * (1.0 - gamma) / valid)
            assert abs(rate - gamma) <= bound, (row["p"], rate, gamma, bound)
            checked += 1
        assert checked == 10

        clean = [row for row in rows if row["mode"] == "clean"]
        assert len(clean) == 1
        rounds = int(clean[0]["rounds"])
        valid = int(clean[0]["valid_rounds"])
        assert float(clean[0]["empirical_failure_rate"]) == 0.0
        keep_dev = abs(valid / rounds - 0.5)
        assert keep_dev <= 3.0 * math.sqrt(0.25 / rounds)
        _pass("noisy secret sharing",
              f"10 strengths within 3 sigma of the closed form, clean rate 0, "
              f"kept fraction off by {keep_dev:.4f}")

    def test_denoiser_rescues_protocol(self, tmp_path):
        """The checked-in [3,1,3] model cuts the failure rate at p = 0.4 to
        below half the raw value."""
        _run_into(tmp_path, "qss_denoised.toml",
                  p_grid=(0.4,), qss_modes=("denoised",))
        _, rows = read_table(tmp_path / "qss.csv")
        assert len(rows) == 1
        rate = float(rows[0]["empirical_failure_rate"])
        bound = theoretical_gamma(0.4) / 2.0
        assert rate < bound
        _pass("denoised secret sharing", f"rate {rate:.4f} < {bound:.4f}")


class TestDeterminism:
    KIND_TOMLS = {
        "train": """
kind = "train"
seed = 5
output_dir = "{out}"
[network]
layers = [1, 1]
[channel]
kind = "bitflip"
p = 0.2
[training]
epochs = 3
n_pairs = 5
""",
        "evaluate-sweep": """
kind = "evaluate-sweep"
seed = 5
output_dir = "{out}"
[channel]
kind = "depolarizing"
p_grid = [0.1, 0.3]
[evaluation]
model = "{model}"
n_test_states = 20
""",
        "generate": """
kind = "generate"
seed = 5
output_dir = "{out}"
[evaluation]
model = "{model}"
""",
        "gate-noise-sweep": """
kind = "gate-noise-sweep"
seed = 5
output_dir = "{out}"
[channel]
kind = "depolarizing"
p = 0.3
[evaluation]
model = "{model}"
n_test_states = 10
sigma_grid = [0.0, 0.05]
""",
        "qss-sweep": """
kind = "qss-sweep"
seed = 5
output_dir = "{out}"
[channel]
p_grid = [0.4]
[qss]
rounds = 100
modes = ["clean", "noisy"]
""",
        "state-city": """
kind = "state-city"
seed = 5
output_dir = "{out}"
[channel]
kind = "depolarizing"
p = 0.4
[evaluation]
model = "{model}"
n_test_states = 10
""",
    }

    def test_exact_reruns_are_byte_identical(self, tmp_path):
        """Every experiment kind re-run with the same seed reproduces its
        output tables byte for byte (the training log is compared without
        its wall-clock column)."""
        model = MODELS / "qdc_212.json"
        reran = []
        for kind, template in self.KIND_TOMLS.items():
            out = tmp_path / kind.replace("-", "_")
            config_path = tmp_path / f"{kind}.toml"
            config_path.write_text(
                template.format(out=out.as_posix(), model=model.as_posix())
            )
            config = load_config(config_path)

            run_experiment(config)
            first = {f.name: f.read_bytes() for f in sorted(out.iterdir())}
            run_experiment(config)
            second = {f.name: f.read_bytes() for f in sorted(out.iterdir())}

            assert first.keys() == second.keys()
            for name in first:
                if name.startswith("training_log"):
                    continue
                assert first[name] == second[name], (kind, name)
            for name in first:
                if not name.startswith("training_log"):
                    continue
                stripped = []
                for blob in (first[name], second[name]):
                    lines = blob.decode().splitlines()
                    stripped.append([",".join(l.split(",")[:3]) for l in lines])
                assert stripped[0] == stripped[1], (kind, name)
            reran.append(kind)
        assert sorted(reran) == sorted(self.KIND_TOMLS)
        _pass("determinism", f"byte-identical re-runs for {len(reran)} kinds")
