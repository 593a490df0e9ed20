"""Experiment configuration files.

One TOML file describes one experiment. The loader checks schema and ranges
up front and reports every problem at once, naming the offending field, so
a bad file never starts a half-run. Defaults follow the reference setup:
finite-difference step 0.1, learning rate 1/4, 1000 shots when sampling
(exact mode by default), 100 training pairs for a 2-qubit input layer and
150 for larger ones, 200 test states.
"""

from __future__ import annotations

from dataclasses import dataclass

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from .network import EXACT
from .noise import BITFLIP, DEPOLARIZING
from .qss import MODES as QSS_MODES
from .training import TrainingConfig

__all__ = [
    "KINDS",
    "ConfigError",
    "ExperimentConfig",
    "load_config",
    "resolved_lines",
    "validate_config",
]

KINDS = (
    "train",
    "evaluate-sweep",
    "generate",
    "gate-noise-sweep",
    "qss-sweep",
    "state-city",
)

_CHANNELS = (BITFLIP, DEPOLARIZING)

# kinds that evaluate an existing model instead of training one
_MODEL_KINDS = ("evaluate-sweep", "generate", "gate-noise-sweep", "state-city")


class ConfigError(ValueError):
    """Raised when a config file fails validation; carries all diagnostics."""

    def __init__(self, path, diagnostics):
        self.path = str(path)
        self.diagnostics = list(diagnostics)
        summary = "; ".join(self.diagnostics)
        super().__init__(f"{self.path}: {summary}")


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    seed: int
    output_dir: str
    layers: tuple | None = None
    channel: str | None = None
    p: float | None = None
    p_grid: tuple | None = None
    training: TrainingConfig | None = None
    runs: tuple | None = None
    model_path: str | None = None
    n_test_states: int = 200
    passes: int = 1
    sigma_grid: tuple | None = None
    qss_rounds: int = 1000
    qss_modes: tuple = ("noisy",)
    shot_resets: bool = False


class _Section:
    """One mapping level of the file, with typed, diagnostic-recording reads."""

    def __init__(self, name, data, problems):
        self.name = name
        self.data = dict(data)
        self.problems = problems

    def _label(self, key):
        return f"{self.name}.{key}" if self.name else key

    @staticmethod
    def _names(kinds):
        friendly = {int: "an integer", float: "a number", str: "a string",
                    bool: "a boolean", list: "a list", dict: "a table"}
        return " or ".join(friendly.get(k, k.__name__) for k in kinds)

    def complain(self, key, message):
        self.problems.append(f"{self._label(key)}: {message}")

    def take(self, key, kinds, default=None, required=False):
        if key not in self.data:
            if required:
                self.complain(key, "required field is missing")
            return default
        value = self.data.pop(key)
        if isinstance(value, bool) and bool not in kinds:
            self.complain(key, f"expected {self._names(kinds)}, got a boolean")
            return default
        if not isinstance(value, kinds):
            self.complain(
                key, f"expected {self._names(kinds)}, got {type(value).__name__}"
            )
            return default
        return value

    def take_number(self, key, default=None, required=False, low=None, high=None):
        value = self.take(key, (int, float), None, required)
        if value is None:
            return default
        value = float(value)
        if low is not None and not (low <= value):
            self.complain(key, f"must be >= {low}, got {value}")
            return default
        if high is not None and not (value <= high):
            self.complain(key, f"must be <= {high}, got {value}")
            return default
        return value

    def take_int(self, key, default=None, required=False, low=None):
        value = self.take(key, (int,), default, required)
        if value is None:
            return default
        if low is not None and value < low:
            self.complain(key, f"must be >= {low}, got {value}")
            return default
        return value

    def take_choice(self, key, choices, default=None, required=False):
        value = self.take(key, (str,), default, required)
        if value is None:
            return default
        if value not in choices:
            self.complain(key, f"must be one of {sorted(choices)}, got {value!r}")
            return default
        return value

    def take_grid(self, key, required=False, low=0.0, high=1.0):
        raw = self.take(key, (list,), None, required)
        if raw is None:
            return None
        if not raw:
            self.complain(key, "must not be empty")
            return None
        grid = []
        for i, item in enumerate(raw):
            if isinstance(item, bool) or not isinstance(item, (int, float)):
                self.complain(key, f"entry {i} is not a number")
                return None
            item = float(item)
            if not (low <= item <= high):
                self.complain(key, f"entry {i} out of range [{low}, {high}]: {item}")
                return None
            grid.append(item)
        return tuple(grid)

    def subsection(self, key):
        raw = self.take(key, (dict,), None)
        return _Section(self._label(key), raw or {}, self.problems)

    def finish(self):
        for key in self.data:
            self.complain(key, "unknown field")


def _take_runs(section, kind, default_p, default_seed):
    """Parse [[training.runs]]: per-run {p, seed} overrides for batch training."""
    raw = section.take("runs", (list,), None)
    if raw is None:
        return None
    if kind != "train":
        section.complain("runs", "only train configs take run lists")
        return None
    if not raw:
        section.complain("runs", "must not be empty")
        return None
    parsed = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict):
            section.complain("runs", f"entry {i} must be a table of p and seed")
            return None
        entry = dict(entry)
        run_p = entry.pop("p", default_p)
        run_seed = entry.pop("seed", default_seed)
        if entry:
            section.complain("runs", f"entry {i} has unknown fields {sorted(entry)}")
            return None
        if run_p is None:
            section.complain("runs", f"entry {i} needs p when channel.p is unset")
            return None
        if isinstance(run_p, bool) or not isinstance(run_p, (int, float)):
            section.complain("runs", f"entry {i}: p must be a number")
            return None
        if not 0.0 <= float(run_p) <= 1.0:
            section.complain("runs", f"entry {i}: p out of range [0, 1]: {run_p}")
            return None
        if isinstance(run_seed, bool) or not isinstance(run_seed, int) or run_seed < 0:
            section.complain("runs", f"entry {i}: seed must be an integer >= 0")
            return None
        parsed.append((float(run_p), run_seed))
    return tuple(parsed)


def _parse(path):
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def _build(path, doc, problems, seed_override=None):
    root = _Section("", doc, problems)

    kind = root.take_choice("kind", KINDS, required=True)
    seed = root.take_int("seed", default=0, low=0)
    output_dir = root.take("output_dir", (str,), default="out")
    if seed_override is not None:
        seed = seed_override

    network = root.subsection("network")
    layers = None
    raw_layers = network.take("layers", (list,), None, required=(kind == "train"))
    if raw_layers is not None:
        if raw_layers and all(
            isinstance(s, int) and not isinstance(s, bool) and s >= 1
            for s in raw_layers
        ) and len(raw_layers) >= 2:
            layers = tuple(raw_layers)
        else:
            network.complain("layers", "must be a list of >= 2 sizes, each >= 1")
    network.finish()

    channel_section = root.subsection("channel")
    needs_channel = kind in (
        "train", "evaluate-sweep", "gate-noise-sweep", "state-city"
    )
    channel = channel_section.take_choice("kind", _CHANNELS, required=needs_channel)
    if kind == "qss-sweep" and channel is None:
        channel = DEPOLARIZING  # the only channel the protocol analysis covers
    needs_p = kind in ("train", "gate-noise-sweep", "state-city")
    p = channel_section.take_number("p", required=needs_p, low=0.0, high=1.0)
    p_grid = channel_section.take_grid(
        "p_grid", required=kind in ("evaluate-sweep", "qss-sweep")
    )
    channel_section.finish()

    training_section = root.subsection("training")
    epochs = training_section.take_int("epochs", default=150, low=0)
    epsilon = training_section.take_number("epsilon", default=0.1)
    eta = training_section.take_number("eta", default=0.25)
    exact = training_section.take("exact", (bool,), default=True)
    shots = training_section.take_int("shots", default=1000, low=1)
    default_pairs = 100 if layers is None or layers[0] <= 2 else 150
    n_pairs = training_section.take_int("n_pairs", default=default_pairs, low=1)
    optimizer = training_section.take_choice(
        "optimizer", ("vanilla", "adam"), default="vanilla"
    )
    init_sigma = training_section.take_number("init_sigma", default=0.05, low=0.0)
    runs = _take_runs(training_section, kind, p, seed)
    training_section.finish()

    training = None
    if kind == "train" and not problems:
        training = TrainingConfig(
            epsilon=epsilon,
            eta=eta,
            shots=EXACT if exact else shots,
            epochs=epochs,
            n_pairs=n_pairs,
            optimizer=optimizer,
            init_sigma=init_sigma,
            seed=seed,
        )

    evaluation = root.subsection("evaluation")
    model_path = evaluation.take(
        "model", (str,), None, required=kind in _MODEL_KINDS
    )
    n_test_states = evaluation.take_int("n_test_states", default=200, low=1)
    passes = evaluation.take_int("passes", default=1, low=1)
    if passes is not None and passes > 2:
        evaluation.complain("passes", f"must be 1 or 2, got {passes}")
        passes = 1
    sigma_grid = evaluation.take_grid(
        "sigma_grid", required=(kind == "gate-noise-sweep"), low=0.0, high=10.0
    )
    evaluation.finish()

    qss = root.subsection("qss")
    qss_rounds = qss.take_int("rounds", default=1000, low=1)
    raw_modes = qss.take("modes", (list,), None)
    qss_modes = ("noisy",)
    if raw_modes is not None:
        if raw_modes and all(isinstance(m, str) and m in QSS_MODES for m in raw_modes):
            qss_modes = tuple(raw_modes)
        else:
            qss.complain("modes", f"must be a non-empty list drawn from {QSS_MODES}")
    shot_resets = qss.take("shot_resets", (bool,), default=False)
    if kind == "qss-sweep" and model_path is None and any(
        m in ("denoised", "generated") for m in qss_modes
    ):
        qss.complain("modes", "denoised and generated modes need evaluation.model")
    qss.finish()

    root.finish()

    if problems:
        return None
    return ExperimentConfig(
        kind=kind,
        seed=seed,
        output_dir=output_dir,
        layers=layers,
        channel=channel,
        p=p,
        p_grid=p_grid,
        training=training,
        runs=runs,
        model_path=model_path,
        n_test_states=n_test_states,
        passes=passes,
        sigma_grid=sigma_grid,
        qss_rounds=qss_rounds,
        qss_modes=qss_modes,
        shot_resets=shot_resets,
    )


def validate_config(path, seed_override=None):
    """Check a config file without running it.

    Returns (config, diagnostics); config is None when anything failed.
    """
    problems: list[str] = []
    try:
        doc = _parse(path)
    except FileNotFoundError:
        return None, [f"{path}: no such file"]
    except tomllib.TOMLDecodeError as err:
        return None, [f"{path}: TOML parse error: {err}"]
    config = _build(path, doc, problems, seed_override)
    return config, problems


def load_config(path, seed_override=None) -> ExperimentConfig:
    """Load a config file or raise ConfigError listing every problem."""
    config, problems = validate_config(path, seed_override)
    if config is None:
        raise ConfigError(path, problems or ["invalid configuration"])
    return config


def resolved_lines(config: ExperimentConfig) -> list[str]:
    """Human-readable dump of a fully resolved config, defaults included."""
    lines = [
        f"kind = {config.kind}",
        f"seed = {config.seed}",
        f"output_dir = {config.output_dir}",
    ]
    if config.layers is not None:
        lines.append(f"network.layers = {list(config.layers)}")
    if config.channel is not None:
        lines.append(f"channel.kind = {config.channel}")
    if config.p is not None:
        lines.append(f"channel.p = {config.p}")
    if config.p_grid is not None:
        lines.append(f"channel.p_grid = {list(config.p_grid)}")
    if config.training is not None:
        t = config.training
        mode = "exact" if t.shots is EXACT else f"shots={t.shots}"
        lines += [
            f"training.epochs = {t.epochs}",
            f"training.epsilon = {t.epsilon}",
            f"training.eta = {t.eta}",
            f"training.sampling = {mode}",
            f"training.n_pairs = {t.n_pairs}",
            f"training.optimizer = {t.optimizer}",
            f"training.init_sigma = {t.init_sigma}",
        ]
        if config.runs is not None:
            runs = [{"p": p, "seed": s} for p, s in config.runs]
            lines.append(f"training.runs = {runs}")
    if config.model_path is not None:
        lines.append(f"evaluation.model = {config.model_path}")
    if config.kind in _MODEL_KINDS:
        lines.append(f"evaluation.n_test_states = {config.n_test_states}")
    if config.kind == "evaluate-sweep":
        lines.append(f"evaluation.passes = {config.passes}")
    if config.sigma_grid is not None:
        lines.append(f"evaluation.sigma_grid = {list(config.sigma_grid)}")
    if config.kind == "qss-sweep":
        lines += [
            f"qss.rounds = {config.qss_rounds}",
            f"qss.modes = {list(config.qss_modes)}",
            f"qss.shot_resets = {config.shot_resets}",
        ]
    return lines
