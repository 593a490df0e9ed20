"""Command-line entry point.

Two file-driven commands (run, validate) cover every experiment kind; three
convenience commands (train, evaluate, qss) build the equivalent config
from flags for quick one-off runs. Exit codes: 0 success, 1 runtime
failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys

from .config import (
    KINDS,
    ConfigError,
    ExperimentConfig,
    load_config,
    resolved_lines,
    validate_config,
)
from .experiments import run_experiment
from .network import EXACT
from .noise import BITFLIP, DEPOLARIZING
from .qss import MODES as QSS_MODES
from .training import TrainingConfig

USAGE_EXIT = 2
FAILURE_EXIT = 1


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}")


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers: {text!r}")


def _str_list(text: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in text.split(",") if part.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qae-lab",
        description="Train, evaluate, and stress quantum denoising networks, "
        "and measure their effect on a three-party secret sharing protocol.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help=f"run a config file ({', '.join(KINDS)})")
    run.add_argument("config", help="path to a TOML experiment config")
    run.add_argument("--seed", type=int, default=None,
                     help="override the config's seed")
    run.set_defaults(func=_cmd_run)

    check = sub.add_parser("validate", help="check a config file without running")
    check.add_argument("config", help="path to a TOML experiment config")
    check.set_defaults(func=_cmd_validate)

    train = sub.add_parser("train", help="train a network from flags")
    train.add_argument("--layers", type=_int_list, required=True,
                       help="layer sizes, e.g. 2,1,2")
    train.add_argument("--channel", choices=(BITFLIP, DEPOLARIZING), required=True)
    train.add_argument("--p", type=float, required=True, help="noise strength")
    train.add_argument("--epochs", type=int, default=150)
    train.add_argument("--epsilon", type=float, default=0.1,
                       help="finite-difference step")
    train.add_argument("--eta", type=float, default=0.25, help="learning rate")
    train.add_argument("--shots", type=int, default=None,
                       help="sample with this many shots instead of exact mode")
    train.add_argument("--n-pairs", type=int, default=None,
                       help="training pairs per epoch draw (default 100, or "
                       "150 for input layers wider than 2)")
    train.add_argument("--optimizer", choices=("vanilla", "adam"),
                       default="vanilla")
    train.add_argument("--init-sigma", type=float, default=0.05,
                       help="stddev of the initial coefficient draw")
    train.add_argument("--seed", type=int, default=0)
    train.add_argument("--out", default="out", help="output directory")
    train.set_defaults(func=_cmd_train)

    ev = sub.add_parser("evaluate", help="sweep a trained model over noise "
                        "strengths from flags")
    ev.add_argument("--model", required=True, help="path to a model file")
    ev.add_argument("--channel", choices=(BITFLIP, DEPOLARIZING), required=True)
    ev.add_argument("--p-grid", type=_float_list, required=True,
                    help="noise strengths, e.g. 0.1,0.2,0.3")
    ev.add_argument("--n-test", type=int, default=200,
                    help="test states per sweep point")
    ev.add_argument("--passes", type=int, choices=(1, 2), default=1,
                    help="apply the network once or twice")
    ev.add_argument("--seed", type=int, default=0)
    ev.add_argument("--out", default="out", help="output directory")
    ev.set_defaults(func=_cmd_evaluate)

    qss = sub.add_parser("qss", help="sweep the secret sharing protocol "
                         "from flags")
    qss.add_argument("--rounds", type=int, default=1000)
    qss.add_argument("--p-grid", type=_float_list, required=True)
    qss.add_argument("--modes", type=_str_list, default=("noisy",),
                     help=f"comma-separated subset of {','.join(QSS_MODES)}")
    qss.add_argument("--model", default=None,
                     help="model file (needed for denoised and generated modes)")
    qss.add_argument("--shot-resets", action="store_true",
                     help="run the network as sampled reset circuits instead "
                     "of the exact pass")
    qss.add_argument("--seed", type=int, default=0)
    qss.add_argument("--out", default="out", help="output directory")
    qss.set_defaults(func=_cmd_qss)

    return parser


def _execute(config: ExperimentConfig) -> int:
    for line in run_experiment(config):
        print(line)
    return 0


def _cmd_run(args) -> int:
    config = load_config(args.config, seed_override=args.seed)
    return _execute(config)


def _cmd_validate(args) -> int:
    config, problems = validate_config(args.config)
    if config is None:
        for problem in problems:
            print(problem, file=sys.stderr)
        return USAGE_EXIT
    print(f"{args.config}: valid")
    for line in resolved_lines(config):
        print(f"  {line}")
    return 0


def _cmd_train(args) -> int:
    layers = args.layers
    n_pairs = args.n_pairs
    if n_pairs is None:
        n_pairs = 100 if layers[0] <= 2 else 150
    training = TrainingConfig(
        epsilon=args.epsilon,
        eta=args.eta,
        shots=EXACT if args.shots is None else args.shots,
        epochs=args.epochs,
        n_pairs=n_pairs,
        optimizer=args.optimizer,
        init_sigma=args.init_sigma,
        seed=args.seed,
    )
    if not 0.0 <= args.p <= 1.0:
        raise ValueError(f"--p must be within [0, 1], got {args.p}")
    config = ExperimentConfig(
        kind="train",
        seed=args.seed,
        output_dir=args.out,
        layers=layers,
        channel=args.channel,
        p=args.p,
        training=training,
    )
    return _execute(config)


def _cmd_evaluate(args) -> int:
    if not all(0.0 <= p <= 1.0 for p in args.p_grid):
        raise ValueError(f"--p-grid values must be within [0, 1]: {args.p_grid}")
    config = ExperimentConfig(
        kind="evaluate-sweep",
        seed=args.seed,
        output_dir=args.out,
        channel=args.channel,
        p_grid=args.p_grid,
        model_path=args.model,
        n_test_states=args.n_test,
        passes=args.passes,
    )
    return _execute(config)


def _cmd_qss(args) -> int:
    unknown = [m for m in args.modes if m not in QSS_MODES]
    if unknown:
        raise ValueError(f"--modes must be drawn from {QSS_MODES}, got {unknown}")
    if not all(0.0 <= p <= 1.0 for p in args.p_grid):
        raise ValueError(f"--p-grid values must be within [0, 1]: {args.p_grid}")
    if args.model is None and any(m in ("denoised", "generated") for m in args.modes):
        raise ValueError("denoised and generated modes need --model")
    config = ExperimentConfig(
        kind="qss-sweep",
        seed=args.seed,
        output_dir=args.out,
        channel=DEPOLARIZING,
        p_grid=args.p_grid,
        model_path=args.model,
        qss_rounds=args.rounds,
        qss_modes=tuple(args.modes),
        shot_resets=args.shot_resets,
    )
    return _execute(config)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as err:
        for problem in err.diagnostics:
            print(f"{err.path}: {problem}", file=sys.stderr)
        return USAGE_EXIT
    except (ValueError, TypeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_EXIT
    except FileNotFoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return FAILURE_EXIT
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return FAILURE_EXIT


if __name__ == "__main__":
    sys.exit(main())
