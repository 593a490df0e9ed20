"""Deterministic random-stream derivation.

Every run owns a single root seed. Any consumer that needs randomness asks
for a stream derived from that root plus a path of labels, e.g.
``derive_stream(7, "training", 0)``. Labels are folded into a
``numpy.random.SeedSequence`` spawn key: integers directly, strings through
CRC-32 of their UTF-8 bytes. Two paths that differ in any label give
statistically independent streams, and the same path always reproduces the
same stream, no matter what order streams are created in or which other
streams exist. That property is what makes sweep points and gradient
components safe to evaluate in any order or in parallel.
"""

from __future__ import annotations

import zlib

import numpy as np

__all__ = ["derive_seed_sequence", "derive_stream", "label_entropy"]


def label_entropy(label) -> int:
    """Map one path label to a 32-bit integer for seed-sequence entropy."""
    if isinstance(label, (bool, float)):
        raise TypeError(f"labels must be int or str, got {label!r}")
    if isinstance(label, (int, np.integer)):
        if label < 0:
            raise ValueError(f"integer labels must be >= 0, got {label}")
        return int(label)
    if isinstance(label, str):
        return zlib.crc32(label.encode("utf-8"))
    raise TypeError(f"labels must be int or str, got {label!r}")


def derive_seed_sequence(root_seed: int, *labels) -> np.random.SeedSequence:
    """Seed sequence for the stream at path (root_seed, *labels)."""
    if not isinstance(root_seed, (int, np.integer)) or isinstance(root_seed, bool):
        raise TypeError(f"root seed must be an integer, got {root_seed!r}")
    if root_seed < 0:
        raise ValueError(f"root seed must be >= 0, got {root_seed}")
    entropy = [int(root_seed)] + [label_entropy(label) for label in labels]
    return np.random.SeedSequence(entropy)


def derive_stream(root_seed: int, *labels) -> np.random.Generator:
    """Generator for the stream at path (root_seed, *labels)."""
    return np.random.default_rng(derive_seed_sequence(root_seed, *labels))
