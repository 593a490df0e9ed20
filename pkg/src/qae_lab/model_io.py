"""Serialization of trained models and tabular results.

Model files are JSON with a fixed field set: layer_sizes, kappa (decimal
array in the canonical coefficient order), channel, p, seed, epochs,
final_fidelity. Floats are written in shortest round-trip form, so saving
and loading is lossless. A missing final fidelity (a model that never
trained) is stored as null; JSON has no NaN.

Tables are comma-separated text with a header row and "\n" line endings on
every platform, which is what makes re-runs byte-comparable.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .network import QaeModel, Topology
from .noise import BITFLIP, DEPOLARIZING

__all__ = ["format_cell", "load_model", "read_table", "save_model", "write_table"]

_METADATA_FIELDS = ("channel", "p", "seed", "epochs", "final_fidelity")
_MODEL_FIELDS = ("layer_sizes", "kappa") + _METADATA_FIELDS


def save_model(model: QaeModel, path) -> None:
    """Write a model to a JSON file, creating parent directories."""
    doc = {
        "layer_sizes": list(model.topology.layer_sizes),
        "kappa": [float(k) for k in model.kappa],
    }
    for name in _METADATA_FIELDS:
        value = model.metadata.get(name)
        if isinstance(value, float) and math.isnan(value):
            value = None
        if isinstance(value, np.generic):
            value = value.item()
        doc[name] = value
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        json.dump(doc, fh, indent=2, allow_nan=False)
        fh.write("\n")


def load_model(path) -> QaeModel:
    """Read a model written by save_model.

    Raises ValueError naming the problem for malformed or incomplete files;
    a missing file raises FileNotFoundError as usual.
    """
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as err:
            raise ValueError(f"{path}: not valid JSON ({err})") from err
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: expected a JSON object at top level")
    missing = [name for name in _MODEL_FIELDS if name not in doc]
    if missing:
        raise ValueError(f"{path}: missing fields {missing}")

    sizes = doc["layer_sizes"]
    if not isinstance(sizes, list) or not all(isinstance(s, int) for s in sizes):
        raise ValueError(f"{path}: layer_sizes must be a list of integers")
    topology = Topology(tuple(sizes))

    kappa = doc["kappa"]
    if not isinstance(kappa, list) or not all(
        isinstance(k, (int, float)) and not isinstance(k, bool) for k in kappa
    ):
        raise ValueError(f"{path}: kappa must be a list of numbers")

    channel = doc["channel"]
    if channel not in (None, BITFLIP, DEPOLARIZING):
        raise ValueError(f"{path}: unknown channel {channel!r}")

    metadata = {name: doc[name] for name in _METADATA_FIELDS}
    return QaeModel(topology, np.array(kappa, dtype=float), metadata)


def format_cell(value) -> str:
    """Canonical text form of one table cell.

    Floats use repr (shortest form that parses back exactly); absent values
    become the empty string.
    """
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        raise TypeError("tables have no boolean columns")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return "nan" if math.isnan(value) else repr(value)
    raise TypeError(f"cannot format {value!r} as a table cell")


def write_table(path, columns, rows) -> None:
    """Write a delimited table with a header, "\n"-terminated lines."""
    columns = list(columns)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            row = list(row)
            if len(row) != len(columns):
                raise ValueError(
                    f"row has {len(row)} cells, header has {len(columns)}"
                )
            writer.writerow([format_cell(cell) for cell in row])


def read_table(path) -> tuple[list[str], list[dict[str, str]]]:
    """Read a table written by write_table.

    Returns (column names, rows), each row a dict keyed by column name with
    string values; callers parse numbers as needed.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            columns = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty table, no header row") from None
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(columns):
                raise ValueError(
                    f"{path}:{lineno}: expected {len(columns)} cells, got {len(row)}"
                )
            rows.append(dict(zip(columns, row)))
    return columns, rows
