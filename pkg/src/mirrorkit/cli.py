"""Command-line interface: train, bench, curve, and gram-check subcommands.

Exit codes: 0 on success, 1 on file or computation errors, 2 on usage errors.
The MIRRORKIT_SEED environment variable, when set, overrides the seed from
flags and experiment files.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import replace

import numpy as np

from .bench import emit_csv, load_experiment_config, run_experiment
from .datasets import load_libsvm, normalize_unit
from .kernels import KernelSpec, gram_matrix, psd_check
from .losses import LossSpec
from .optimizer import TRAINERS, DualModel, TrainerConfig, train

SEED_ENV = "MIRRORKIT_SEED"


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mirrorkit",
        description="Kernel SGD trainers and benchmark harness for libsvm-format data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    train_p = sub.add_parser("train", help="train one model and dump its coefficients")
    train_p.add_argument("--data", required=True, help="libsvm training file")
    train_p.add_argument("--trainer", required=True, choices=TRAINERS)
    train_p.add_argument("--kernel", required=True, help="linear | gaussian:<g> | improper:<nu>:<base>")
    train_p.add_argument("--loss", required=True, help="hinge | sigmoid01:<L>")
    train_p.add_argument("--lambda", dest="lam", required=True, type=float,
                         help="regularization weight (step scale c for zeroone)")
    train_p.add_argument("--iters", required=True, type=_positive_int)
    train_p.add_argument("--seed", required=True, type=int)
    train_p.add_argument("--projection-radius", type=float, default=None)
    train_p.add_argument("--normalize", action="store_true", help="unit-normalize features first")
    train_p.add_argument("--decaying-step", action="store_true",
                         help="zeroone only: use c/sqrt(t) instead of c/sqrt(T)")
    train_p.add_argument("--out", default=None, help="write the model dump here instead of stdout")
    train_p.set_defaults(func=_cmd_train)

    bench_p = sub.add_parser("bench", help="run a seeded repeated experiment from a config file")
    bench_p.add_argument("--config", required=True, help="experiment file (key = value lines)")
    bench_p.add_argument("--out", required=True, help="CSV destination")
    bench_p.add_argument("--jobs", type=_positive_int, default=None,
                         help="parallel repetitions (default: repetitions, capped at CPUs)")
    bench_p.set_defaults(func=_cmd_bench, curve_every=None)

    curve_p = sub.add_parser("curve", help="bench with a learning curve on repetition 1")
    curve_p.add_argument("--config", required=True)
    curve_p.add_argument("--out", required=True)
    curve_p.add_argument("--curve-every", dest="curve_every", type=_positive_int, default=1000,
                         help="evaluate test accuracy every N iterations (default 1000)")
    curve_p.add_argument("--jobs", type=_positive_int, default=None)
    curve_p.set_defaults(func=_cmd_bench)

    gram_p = sub.add_parser("gram-check", help="PSD-check a kernel Gram matrix on a data subset")
    gram_p.add_argument("--data", required=True, help="libsvm file")
    gram_p.add_argument("--kernel", required=True)
    gram_p.add_argument("--n", required=True, type=_positive_int, help="subset size (first n samples)")
    gram_p.add_argument("--tol", type=float, default=1e-8)
    gram_p.add_argument("--normalize", action="store_true")
    gram_p.set_defaults(func=_cmd_gram_check)

    return parser


def _resolve_seed(default: int) -> int:
    override = os.environ.get(SEED_ENV)
    if override is None:
        return default
    return int(override)


def _model_dump(model: DualModel, loss: LossSpec) -> str:
    lines = [
        f"kernel {model.kernel}",
        f"loss {loss}",
        f"samples {len(model.train_set)}",
    ]
    for index in np.flatnonzero(model.alphas):
        lines.append(f"{int(index)} {float(model.alphas[index])!r}")
    return "\n".join(lines) + "\n"


def _cmd_train(args) -> int:
    data = load_libsvm(args.data)
    if args.normalize:
        data = normalize_unit(data)
    loss = LossSpec.parse(args.loss)
    config = TrainerConfig(
        trainer=args.trainer,
        kernel=KernelSpec.parse(args.kernel),
        loss=loss,
        lam=args.lam,
        iterations=args.iters,
        seed=_resolve_seed(args.seed),
        projection_radius=args.projection_radius,
        decaying_step=args.decaying_step,
    )
    model = train(config, data)
    dump = _model_dump(model, loss)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(dump)
        print(f"model={args.out}")
    else:
        sys.stdout.write(dump)
    print(f"support={model.support_size}")
    print(f"norm={math.sqrt(max(model.norm_sq, 0.0)):.6g}")
    return 0


def _cmd_bench(args) -> int:
    config = load_experiment_config(args.config)
    seed = _resolve_seed(config.trainer.seed)
    if seed != config.trainer.seed:
        config = replace(config, trainer=replace(config.trainer, seed=seed))
    if args.curve_every is not None:
        config = replace(config, curve_every=args.curve_every)
    jobs = args.jobs
    if jobs is None:
        jobs = max(1, min(config.repetitions, os.cpu_count() or 1))
    result = run_experiment(config, jobs=jobs)
    emit_csv(result, args.out)
    print(f"csv={args.out}")
    print(f"wall_ms={result.wall_ms:.0f}")
    for run, accuracy in enumerate(result.accuracies, start=1):
        print(f"run{run}_accuracy={accuracy:.6g}")
    print(f"mean_accuracy={result.mean_accuracy:.6g}")
    return 0


def _cmd_gram_check(args) -> int:
    data = load_libsvm(args.data)
    if args.normalize:
        data = normalize_unit(data)
    count = min(args.n, len(data))
    vectors = [sample.features for sample in data.samples[:count]]
    gram = gram_matrix(KernelSpec.parse(args.kernel), vectors)
    report = psd_check(gram, tol=args.tol, max_size=max(count, 256))
    print(f"n={count}")
    print(f"min_eigenvalue={report.min_eigenvalue:.6g}")
    print("PASS" if report.passed else "FAIL")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage/help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())
