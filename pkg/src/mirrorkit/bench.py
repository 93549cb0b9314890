"""Seeded, repeatable experiments: accuracy, learning curves, CSV output."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .datasets import Dataset, load_libsvm, normalize_unit
from .kernels import KernelSpec
from .losses import LossSpec, loss_value, zero_one_error
from .optimizer import DualModel, TrainerConfig, train

CSV_HEADER = "run,iteration,split,accuracy,wall_ms"

_EXPERIMENT_KEYS = frozenset(
    {
        "train_path",
        "test_path",
        "trainer",
        "kernel",
        "loss",
        "lambda",
        "iterations",
        "seed",
        "projection_radius",
        "decaying_step",
        "repetitions",
        "curve_every",
        "normalize",
    }
)
_REQUIRED_KEYS = (
    "train_path",
    "test_path",
    "trainer",
    "kernel",
    "loss",
    "lambda",
    "iterations",
    "seed",
    "repetitions",
)


@dataclass(frozen=True)
class ExperimentConfig:
    """One benchmark: dataset pair, trainer settings, repetitions, curve policy."""

    train_path: str
    test_path: str
    trainer: TrainerConfig
    repetitions: int
    curve_every: int = 0
    normalize: bool = False

    def __post_init__(self):
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if self.curve_every < 0:
            raise ValueError("curve_every must be >= 0")


@dataclass(frozen=True)
class RunResult:
    """Per-repetition accuracies, their mean, curve checkpoints, and wall time."""

    accuracies: tuple
    mean_accuracy: float
    curve: tuple
    iterations: int
    wall_ms: float
    rep_wall_ms: tuple


def evaluate_accuracy(model: DualModel, test: Dataset) -> float:
    """Fraction of test samples classified correctly."""
    activations = model.activations(test)
    errors = zero_one_error(activations, test.labels())
    return float(np.count_nonzero(errors == 0) / len(test))


def _run_repetition(args) -> tuple:
    trainer_config, train_set, test_set = args
    started = time.perf_counter()
    model = train(trainer_config, train_set)
    accuracy = evaluate_accuracy(model, test_set)
    return accuracy, (time.perf_counter() - started) * 1000.0


def _run_repetition_with_curve(trainer_config, train_set, test_set, curve_every):
    points = []

    def record(t, snapshot):
        points.append((t, evaluate_accuracy(snapshot, test_set)))

    started = time.perf_counter()
    train(trainer_config, train_set, checkpoint_every=curve_every, on_checkpoint=record)
    wall = (time.perf_counter() - started) * 1000.0
    # The final checkpoint sits exactly at iteration T, so its accuracy IS the
    # repetition's final accuracy.
    return points[-1][1], wall, points


def run_experiment(config: ExperimentConfig, jobs: int = 1) -> RunResult:
    """Execute R training repetitions with seeds seed, seed+1, ...

    The learning curve, when requested, is collected on repetition 1 only.
    Repetitions after the first may run in parallel worker processes; results
    are merged by repetition index, so the output does not depend on ``jobs``.
    """
    train_set = load_libsvm(config.train_path)
    test_set = load_libsvm(config.test_path)
    if config.normalize:
        train_set = normalize_unit(train_set)
        test_set = normalize_unit(test_set)

    rep_configs = [
        replace(config.trainer, seed=config.trainer.seed + k)
        for k in range(config.repetitions)
    ]
    accuracies: list = [None] * config.repetitions
    walls: list = [None] * config.repetitions
    curve: list = []

    started = time.perf_counter()
    pending = list(range(config.repetitions))
    if config.curve_every > 0:
        accuracies[0], walls[0], curve = _run_repetition_with_curve(
            rep_configs[0], train_set, test_set, config.curve_every
        )
        pending = pending[1:]

    tasks = [(rep_configs[k], train_set, test_set) for k in pending]
    jobs = max(1, min(jobs, len(tasks))) if tasks else 1
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_repetition, tasks))
    else:
        outcomes = [_run_repetition(task) for task in tasks]
    for k, (accuracy, wall) in zip(pending, outcomes):
        accuracies[k] = accuracy
        walls[k] = wall

    total_wall = (time.perf_counter() - started) * 1000.0
    return RunResult(
        accuracies=tuple(accuracies),
        mean_accuracy=float(np.mean(accuracies)),
        curve=tuple(curve),
        iterations=config.trainer.iterations,
        wall_ms=total_wall,
        rep_wall_ms=tuple(walls),
    )


@dataclass(frozen=True)
class OracleGapReport:
    """Empirical loss/objective gaps between a model and a reference model."""

    loss_model: float
    loss_reference: float
    loss_gap: float
    reg_model: float
    reg_reference: float
    objective_gap: float
    bound: float
    holds: bool


def oracle_gap_report(
    model: DualModel,
    reference: DualModel,
    test: Dataset,
    loss: LossSpec,
    lam: float = 0.0,
) -> OracleGapReport:
    """Compare mean test loss and regularized objective of two dual models.

    Reports whether the loss gap is bounded by the objective gap plus the
    reference's regularizer term.  With lam = 0 the bound degenerates to the
    objective gap itself.
    """
    if model.kernel != reference.kernel:
        raise ValueError("models use different kernels")
    if model.train_set is not reference.train_set and model.train_set != reference.train_set:
        raise ValueError("models were trained on different training sets")
    labels = test.labels()
    loss_model = float(np.mean(loss_value(loss, model.activations(test), labels)))
    loss_reference = float(np.mean(loss_value(loss, reference.activations(test), labels)))
    reg_model = 0.5 * lam * model.norm_squared_exact() if lam else 0.0
    reg_reference = 0.5 * lam * reference.norm_squared_exact() if lam else 0.0
    loss_gap = loss_model - loss_reference
    objective_gap = (loss_model + reg_model) - (loss_reference + reg_reference)
    bound = objective_gap + reg_reference
    return OracleGapReport(
        loss_model=loss_model,
        loss_reference=loss_reference,
        loss_gap=loss_gap,
        reg_model=reg_model,
        reg_reference=reg_reference,
        objective_gap=objective_gap,
        bound=bound,
        holds=loss_gap <= bound + 1e-12,
    )


def _format_accuracy(value: float) -> str:
    return f"{value:.6g}"


def emit_csv(result: RunResult, destination) -> None:
    """Write the result as CSV: final accuracies per run, then curve checkpoints.

    The wall_ms column is fixed to 0 so that repeated identical invocations
    emit byte-identical files; measured wall time lives on RunResult.
    """
    lines = [CSV_HEADER]
    for run, accuracy in enumerate(result.accuracies, start=1):
        lines.append(f"{run},{result.iterations},test,{_format_accuracy(accuracy)},0")
    for iteration, accuracy in result.curve:
        lines.append(f"1,{iteration},test,{_format_accuracy(accuracy)},0")
    text = "\n".join(lines) + "\n"
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        Path(destination).write_text(text, encoding="utf-8")


def _parse_bool(text: str, context: str) -> bool:
    lowered = text.lower()
    if lowered in ("true", "1", "yes"):
        return True
    if lowered in ("false", "0", "no"):
        return False
    raise ValueError(f"{context}: expected a boolean, got {text!r}")


def load_experiment_config(path) -> ExperimentConfig:
    """Read a line-oriented ``key = value`` experiment file; ``#`` starts a comment."""
    path = Path(path)
    raw: dict = {}
    with path.open("r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key = key.strip()
            value = value.strip()
            if key not in _EXPERIMENT_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            if key in raw:
                raise ValueError(f"{path}:{lineno}: duplicate key {key!r}")
            raw[key] = value
    missing = [key for key in _REQUIRED_KEYS if key not in raw]
    if missing:
        raise ValueError(f"{path}: missing keys: {', '.join(missing)}")
    trainer = TrainerConfig(
        trainer=raw["trainer"].replace("-", "_"),
        kernel=KernelSpec.parse(raw["kernel"]),
        loss=LossSpec.parse(raw["loss"]),
        lam=float(raw["lambda"]),
        iterations=int(raw["iterations"]),
        seed=int(raw["seed"]),
        projection_radius=(
            float(raw["projection_radius"]) if "projection_radius" in raw else None
        ),
        decaying_step=(
            _parse_bool(raw["decaying_step"], f"{path}: decaying_step")
            if "decaying_step" in raw
            else False
        ),
    )
    return ExperimentConfig(
        train_path=raw["train_path"],
        test_path=raw["test_path"],
        trainer=trainer,
        repetitions=int(raw["repetitions"]),
        curve_every=int(raw.get("curve_every", "0")),
        normalize=_parse_bool(raw.get("normalize", "false"), f"{path}: normalize"),
    )
