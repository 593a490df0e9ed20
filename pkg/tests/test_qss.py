"""Secret-sharing protocol: inference rule, round sampling, failure rates."""

import numpy as np
import pytest

from qae_lab.noise import Syndrome
from qae_lab.qss import (
    BASIS_X,
    BASIS_Y,
    CLEAN,
    DENOISED,
    GENERATED,
    NOISY,
    VALID_TRIPLES,
    QssConfig,
    QssRound,
    brute_force_gamma,
    failure_rate,
    gamma_components,
    infer_charlie_bit,
    is_valid_triple,
    run_round,
    syndrome_failure_probability,
    theoretical_gamma,
)
from qae_lab.states import H, S_DAG, X, Y, Z, ghz_state
from test_network import identity_channel_model

ROTATION = {BASIS_X: H, BASIS_Y: H @ S_DAG}

PLUS_X = np.array([1, 1]) / np.sqrt(2)
MINUS_X = np.array([1, -1]) / np.sqrt(2)
PLUS_Y = np.array([1, 1j]) / np.sqrt(2)
MINUS_Y = np.array([1, -1j]) / np.sqrt(2)

ALL_TRIPLES = [
    (a, b, c)
    for a in (BASIS_X, BASIS_Y)
    for b in (BASIS_X, BASIS_Y)
    for c in (BASIS_X, BASIS_Y)
]


class TestTripleBookkeeping:
    def test_exactly_the_anticorrelated_triples_are_valid(self):
        valid = [t for t in ALL_TRIPLES if is_valid_triple(t)]
        assert sorted(valid) == sorted(VALID_TRIPLES)
        assert len(valid) == 4

    def test_all_x_round_infers_the_parity(self):
        for a in (0, 1):
            for b in (0, 1):
                got = infer_charlie_bit(BASIS_X, a, BASIS_X, b, BASIS_X)
                assert got == a ^ b

    def test_two_y_rounds_infer_the_flipped_parity(self):
        for bases in VALID_TRIPLES[1:]:
            for a in (0, 1):
                for b in (0, 1):
                    got = infer_charlie_bit(bases[0], a, bases[1], b, bases[2])
                    assert got == 1 - (a ^ b)

    def test_invalid_triple_rejected(self):
        with pytest.raises(ValueError):
            infer_charlie_bit(BASIS_X, 0, BASIS_X, 1, BASIS_Y)

    def test_unknown_basis_rejected(self):
        with pytest.raises(ValueError):
            infer_charlie_bit("Z", 0, BASIS_X, 1, BASIS_X)


class TestMeasurementAlgebra:
    @pytest.mark.parametrize(
        "op,state,phase,image",
        [
            (X, PLUS_X, 1, PLUS_X),
            (X, MINUS_X, -1, MINUS_X),
            (X, PLUS_Y, 1j, MINUS_Y),
            (X, MINUS_Y, -1j, PLUS_Y),
            (Y, PLUS_X, -1j, MINUS_X),
            (Y, MINUS_X, 1j, PLUS_X),
            (Y, PLUS_Y, 1, PLUS_Y),
            (Y, MINUS_Y, -1, MINUS_Y),
            (Z, PLUS_X, 1, MINUS_X),
            (Z, MINUS_X, 1, PLUS_X),
            (Z, PLUS_Y, 1, MINUS_Y),
            (Z, MINUS_Y, 1, PLUS_Y),
        ],
    )
    def test_pauli_action_on_transverse_eigenstates(self, op, state, phase, image):
        # how each error letter permutes (and phases) the measured eigenstates;
        # this is what makes Z errors flip inferred bits while X errors cancel
        np.testing.assert_allclose(op @ state, phase * image, atol=1e-12)

    def test_rotations_map_eigenstates_to_outcome_bits(self):
        # outcome bit 0 must mean the +1 eigenstate in either basis
        for rot, plus, minus in (
            (ROTATION[BASIS_X], PLUS_X, MINUS_X),
            (ROTATION[BASIS_Y], PLUS_Y, MINUS_Y),
        ):
            np.testing.assert_allclose(rot @ plus, [1, 0], atol=1e-12)
            np.testing.assert_allclose(rot @ minus, [0, 1], atol=1e-12)

    def test_inference_matches_the_entangled_amplitudes(self):
        # on the clean shared state, every valid triple puts all weight on
        # outcomes whose third bit equals the inferred one: each consistent
        # outcome has amplitude of magnitude 1/2, each inconsistent one 0
        ghz = ghz_state(3).amplitudes
        for bases in VALID_TRIPLES:
            circuit = np.kron(
                np.kron(ROTATION[bases[0]], ROTATION[bases[1]]), ROTATION[bases[2]]
            )
            amps = circuit @ ghz
            for a in (0, 1):
                for b in (0, 1):
                    expected_c = infer_charlie_bit(bases[0], a, bases[1], b, bases[2])
                    for c in (0, 1):
                        mag = abs(amps[(a << 2) | (b << 1) | c])
                        want = 0.5 if c == expected_c else 0.0
                        assert mag == pytest.approx(want, abs=1e-12)


class TestCleanRounds:
    def test_valid_rounds_never_fail(self):
        rng = np.random.default_rng(30)
        config = QssConfig(rounds=1, p=0.0, mode=CLEAN)
        rounds = [run_round(config, rng) for _ in range(600)]
        assert all(not r.failed for r in rounds if r.valid)
        rate, valid = failure_rate(
            QssConfig(rounds=600, p=0.0, mode=CLEAN), np.random.default_rng(31)
        )
        assert rate == 0.0 and valid > 0

    def test_half_of_rounds_are_valid(self):
        rng = np.random.default_rng(32)
        config = QssConfig(rounds=1, p=0.0, mode=CLEAN)
        n = 600
        valid = sum(run_round(config, rng).valid for _ in range(n))
        assert abs(valid - n / 2) < 3 * np.sqrt(n * 0.25)

    def test_invalid_rounds_carry_no_verdict(self):
        rng = np.random.default_rng(33)
        config = QssConfig(rounds=1, p=0.0, mode=CLEAN)
        invalid = [r for _ in range(200) for r in [run_round(config, rng)] if not r.valid]
        assert invalid
        assert all(r.inferred_charlie is None and r.failed is None for r in invalid)

    def test_one_share_alone_is_uninformative(self):
        # Alice's bit by itself must not predict Charlie's
        rng = np.random.default_rng(34)
        config = QssConfig(rounds=1, p=0.0, mode=CLEAN)
        rounds = [run_round(config, rng) for _ in range(2000)]
        xxx = [r for r in rounds if r.bases == VALID_TRIPLES[0]]
        agree = sum(r.bits[0] == r.bits[2] for r in xxx)
        assert abs(agree - len(xxx) / 2) < 3 * np.sqrt(len(xxx) * 0.25)

    def test_round_is_deterministic_per_seed(self):
        config = QssConfig(rounds=1, p=0.3, mode=NOISY)
        r1 = run_round(config, np.random.default_rng(35))
        r2 = run_round(config, np.random.default_rng(35))
        assert r1 == r2

    def test_failure_rate_with_no_valid_rounds(self):
        # seed 0 draws an all-Y triple on its single round
        rate, valid = failure_rate(
            QssConfig(rounds=1, p=0.0, mode=CLEAN), np.random.default_rng(0)
        )
        assert rate is None and valid == 0


class TestNoisyRounds:
    def test_failure_rate_matches_closed_form(self):
        p = 0.4
        rng = np.random.default_rng(36)
        rate, valid = failure_rate(QssConfig(rounds=4000, p=p, mode=NOISY), rng)
        gamma = theoretical_gamma(p)
        sigma = np.sqrt(gamma * (1 - gamma) / valid)
        assert abs(rate - gamma) < 3 * sigma

    def test_zero_noise_reduces_to_clean_statistics(self):
        rng = np.random.default_rng(37)
        rate, valid = failure_rate(QssConfig(rounds=400, p=0.0, mode=NOISY), rng)
        assert rate == 0.0 and valid > 100


class TestGammaTheory:
    def test_endpoints(self):
        assert theoretical_gamma(0.0) == 0.0
        assert theoretical_gamma(1.0) == pytest.approx(0.5)

    def test_monotone_on_unit_interval(self):
        grid = np.linspace(0, 1, 41)
        vals = [theoretical_gamma(p) for p in grid]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    @pytest.mark.parametrize("p", np.round(np.linspace(0, 1, 11), 2).tolist())
    def test_exhaustive_error_average_agrees(self, p):
        assert brute_force_gamma(p) == pytest.approx(theoretical_gamma(p), abs=1e-12)

    @pytest.mark.parametrize("p", [0.0, 0.1, 0.35, 0.7, 1.0])
    def test_components_recombine(self, p):
        gi, gx, gy, gz = gamma_components(p)
        assert gx == 0.5 and gy == 0.5
        mix = (1 - 0.75 * p) * gi + 0.25 * p * (gx + gy + gz)
        assert mix == pytest.approx(theoretical_gamma(p), abs=1e-12)

    def test_component_endpoints(self):
        gi, _, _, gz = gamma_components(0.0)
        assert gi == 0.0 and gz == 1.0
        gi, _, _, gz = gamma_components(1.0)
        assert gi == 0.5 and gz == 0.5

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            theoretical_gamma(-0.1)
        with pytest.raises(ValueError):
            gamma_components(1.5)


class TestSyndromeFailures:
    def test_invariant_syndromes_never_fail(self):
        # errors that leave the shared state fixed are harmless
        for letters in ("III", "XXX", "ZZI", "ZIZ", "IZZ"):
            assert syndrome_failure_probability(Syndrome(letters)) == pytest.approx(
                0.0, abs=1e-12
            )

    def test_phase_flips_always_fail(self):
        # an odd number of Z errors negates the entangled phase, which flips
        # every inferred bit
        for letters in ("ZII", "IZI", "IIZ", "ZZZ"):
            assert syndrome_failure_probability(Syndrome(letters)) == pytest.approx(
                1.0, abs=1e-12
            )

    def test_probabilities_are_probabilities(self):
        letters = "IXYZ"
        for i in range(64):
            word = letters[i >> 4 & 3] + letters[i >> 2 & 3] + letters[i & 3]
            val = syndrome_failure_probability(Syndrome(word))
            assert -1e-12 <= val <= 1 + 1e-12

    def test_wrong_width_rejected(self):
        with pytest.raises(ValueError):
            syndrome_failure_probability(Syndrome("II"))


class TestModelModes:
    def test_pass_through_model_reproduces_noisy_rounds_exactly(self):
        # an identity network consumes no randomness in the exact pass, so
        # the two modes see the same draws and must agree round for round
        p = 0.37
        noisy_cfg = QssConfig(rounds=1, p=p, mode=NOISY)
        den_cfg = QssConfig(rounds=1, p=p, mode=DENOISED)
        model = identity_channel_model(3)
        rng_a = np.random.default_rng(38)
        rng_b = np.random.default_rng(38)
        for _ in range(200):
            assert run_round(noisy_cfg, rng_a) == run_round(den_cfg, rng_b, model)

    def test_pass_through_model_with_shot_resets_matches_statistically(self):
        p = 0.4
        model = identity_channel_model(3)
        rng = np.random.default_rng(39)
        rate, valid = failure_rate(
            QssConfig(rounds=1500, p=p, mode=DENOISED), rng, model, shot_resets=True
        )
        gamma = theoretical_gamma(p)
        sigma = np.sqrt(gamma * (1 - gamma) / valid)
        assert abs(rate - gamma) < 3 * sigma

    def test_generated_mode_from_untrained_output_is_chance(self):
        # an identity network emits the all-zero product state from reset
        # wires; its outcomes carry no correlation, so half the valid
        # rounds fail
        model = identity_channel_model(3)
        rng = np.random.default_rng(40)
        rate, valid = failure_rate(
            QssConfig(rounds=800, mode=GENERATED), rng, model
        )
        sigma = np.sqrt(0.25 / valid)
        assert abs(rate - 0.5) < 3 * sigma

    def test_model_required_for_model_modes(self):
        rng = np.random.default_rng(41)
        with pytest.raises(ValueError):
            run_round(QssConfig(rounds=1, p=0.2, mode=DENOISED), rng)
        with pytest.raises(ValueError):
            run_round(QssConfig(rounds=1, mode=GENERATED), rng)

    def test_wrong_shape_model_rejected(self):
        rng = np.random.default_rng(42)
        with pytest.raises(ValueError):
            run_round(
                QssConfig(rounds=1, p=0.2, mode=DENOISED),
                rng,
                identity_channel_model(2),
            )


class TestConfigValidation:
    def test_bad_round_count(self):
        with pytest.raises(ValueError):
            QssConfig(rounds=0)

    def test_bad_noise_strength(self):
        with pytest.raises(ValueError):
            QssConfig(rounds=10, p=1.5)

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            QssConfig(rounds=10, mode="telepathy")

    def test_round_record_is_frozen(self):
        r = QssRound(VALID_TRIPLES[0], (0, 0, 0), True, 0, False)
        with pytest.raises(AttributeError):
            r.valid = False
