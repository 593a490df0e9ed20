"""Train a small denoising network from scratch and watch it converge.

A [2,1,2] network learns to undo bit flips at p = 0.2 in exact mode. Thirty
epochs take a couple of seconds; the full reference setting is 150 epochs
(see configs/train_bitflip_212.toml). Run:

    python3 demos/train_quick.py
"""

import numpy as np

from qae_lab.network import Topology
from qae_lab.noise import BITFLIP, ChannelSpec
from qae_lab.training import TrainingConfig, evaluate, train

def main():
    topology = Topology((2, 1, 2))
    channel = ChannelSpec(BITFLIP, 0.2)
    config = TrainingConfig(epochs=30, n_pairs=100, seed=7)
    rng = np.random.default_rng(config.seed)

    print(f"training {list(topology.layer_sizes)} on {channel.kind} p = {channel.p}, "
          f"{config.epochs} epochs, {config.n_pairs} pairs")
    model, log = train(topology, channel, config, rng)

    print(f"  {'epoch':>5} {'train_fid':>9} {'val_fid':>9}")
    for rec in log.records:
        if rec.epoch % 5 == 0 or rec.epoch == 1:
            print(f"  {rec.epoch:5d} {rec.train_fidelity:9.4f} {rec.val_fidelity:9.4f}")

    mean, std, _ = evaluate(model, channel, 50, np.random.default_rng(1))
    print(f"final fidelity on 50 fresh corrupted states: {mean:.4f} +- {std:.4f}")
    crossing = log.first_crossing(0.9)
    if crossing is not None:
        print(f"training fidelity first crossed 0.9 at epoch {crossing}")


if __name__ == "__main__":
    main()
