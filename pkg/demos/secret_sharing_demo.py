"""Three-party secret sharing: clean, noisy, and rescued by a denoiser.

Each round distributes one GHZ triplet; everyone measures in a random X or Y
basis and keeps rounds whose basis combination carries the parity relation.
Depolarizing noise at p = 0.4 pushes the failure rate toward the theoretical
value, and the checked-in [3,1,3] network pulls it back down. Run:

    python3 demos/secret_sharing_demo.py
"""

from pathlib import Path

import numpy as np

from qae_lab.model_io import load_model
from qae_lab.qss import (
    CLEAN,
    DENOISED,
    NOISY,
    QssConfig,
    run_round,
    theoretical_gamma,
)

MODEL_PATH = Path(__file__).resolve().parent.parent / "models" / "qdc_313.json"
ROUNDS = 1000
P = 0.4


def play(mode, model=None):
    config = QssConfig(rounds=ROUNDS, p=P, mode=mode, seed=5)
    rng = np.random.default_rng(config.seed)
    return [run_round(config, rng, model=model) for _ in range(config.rounds)]


def stats(rounds):
    valid = [rnd for rnd in rounds if rnd.valid]
    failures = sum(rnd.failed for rnd in valid)
    return failures / len(valid), len(valid)


def main():
    model = load_model(MODEL_PATH)

    clean_rounds = play(CLEAN)
    print("first valid rounds of the clean protocol:")
    print(f"  {'bases':>5} {'alice':>5} {'bob':>3} {'charlie':>7} {'inferred':>8}")
    shown = 0
    for rnd in clean_rounds:
        if not rnd.valid:
            continue
        a, b, c = rnd.bits
        print(f"  {''.join(rnd.bases):>5} {a:5d} {b:3d} {c:7d} {rnd.inferred_charlie:8d}")
        shown += 1
        if shown == 5:
            break
    print()

    print(f"{ROUNDS} rounds per setting, p = {P}:")
    print(f"  {'setting':>9} {'kept':>5} {'failure rate':>12}")
    for mode, rounds in (
        (CLEAN, clean_rounds),
        (NOISY, play(NOISY)),
        (DENOISED, play(DENOISED, model=model)),
    ):
        rate, valid = stats(rounds)
        print(f"  {mode:>9} {valid:5d} {rate:12.4f}")
    print()
    print(f"theoretical noisy rate at p = {P}: {theoretical_gamma(P):.4f}")


if __name__ == "__main__":
    main()
