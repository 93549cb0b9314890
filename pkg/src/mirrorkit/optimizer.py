"""Euclidean mirror-descent updates, step schedules, and dual-form SGD trainers.

The update minimizes ``eta*<g, w> + 0.5*||w - w_t||^2 + eta*(lam/2)*||w||^2``,
whose closed form is ``(w_t - eta*g) / (1 + eta*lam)``.  Three trainers drive
it in the kernel dual:

* ``pegasos`` - regularized updates with the 1/(lam*t) schedule,
* ``zeroone_reg`` - the same schedule/regularizer, meant for the sigmoid loss,
* ``zeroone`` - unregularized, constant c/sqrt(T) step (or c/sqrt(t) when
  ``decaying_step`` is set).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .datasets import Dataset, to_csr
from .kernels import IMPROPER, LINEAR, KernelDomainError, KernelSpec, kernel_matrix
from .losses import LossSpec, loss_grad

TRAINERS = ("pegasos", "zeroone", "zeroone_reg")

CONST_OVER_SQRT_T = "const_over_sqrt_T"
INV_LAMBDA_T = "inv_lambda_t"
INV_SQRT_T = "inv_sqrt_t"


@dataclass(frozen=True)
class MirrorMap:
    """Euclidean geometry 0.5*||w||^2; alpha is its strong-convexity constant."""

    alpha: float = 1.0

    def bregman(self, w, v) -> float:
        diff = np.asarray(w, dtype=np.float64) - np.asarray(v, dtype=np.float64)
        return 0.5 * float(np.sum(diff * diff))


EUCLIDEAN = MirrorMap()


@dataclass(frozen=True)
class StepSchedule:
    """Step-size rule: c/sqrt(T) constant, 1/(lam*t), or the decaying c/sqrt(t)."""

    kind: str
    value: float
    horizon: int | None = None

    def __post_init__(self):
        if self.kind not in (CONST_OVER_SQRT_T, INV_LAMBDA_T, INV_SQRT_T):
            raise ValueError(f"unknown schedule kind {self.kind!r}")
        if self.value <= 0:
            raise ValueError("schedule scale must be positive")
        if self.kind == CONST_OVER_SQRT_T and (self.horizon is None or self.horizon < 1):
            raise ValueError("constant schedule needs a horizon T >= 1")

    @classmethod
    def constant_over_sqrt_T(cls, scale: float, horizon: int) -> "StepSchedule":
        return cls(CONST_OVER_SQRT_T, float(scale), int(horizon))

    @classmethod
    def inverse_lambda_t(cls, lam: float) -> "StepSchedule":
        return cls(INV_LAMBDA_T, float(lam))

    @classmethod
    def inverse_sqrt_t(cls, scale: float) -> "StepSchedule":
        return cls(INV_SQRT_T, float(scale))


def step_size(schedule: StepSchedule, t: int) -> float:
    """Step size at iteration t (1-based)."""
    if t < 1:
        raise ValueError("iteration counter starts at 1")
    if schedule.kind == CONST_OVER_SQRT_T:
        if t > schedule.horizon:
            raise ValueError(f"iteration {t} beyond horizon {schedule.horizon}")
        return schedule.value / math.sqrt(schedule.horizon)
    if schedule.kind == INV_LAMBDA_T:
        return 1.0 / (schedule.value * t)
    return schedule.value / math.sqrt(t)


def mirror_step(w, grad, eta: float, lam: float = 0.0) -> np.ndarray:
    """One closed-form Euclidean update; lam = 0 reduces to a plain gradient step."""
    w = np.asarray(w, dtype=np.float64)
    grad = np.asarray(grad, dtype=np.float64)
    if w.shape != grad.shape:
        raise ValueError(f"shape mismatch: {w.shape} vs {grad.shape}")
    if eta <= 0:
        raise ValueError("eta must be positive")
    return (w - eta * grad) / (1.0 + eta * lam)


@dataclass(frozen=True)
class TrainerConfig:
    """Everything one training run needs.

    For the regularized trainers ``lam`` is the regularization weight; for the
    unregularized ``zeroone`` trainer the same field carries the step scale c
    of the c/sqrt(T) schedule.
    """

    trainer: str
    kernel: KernelSpec
    loss: LossSpec
    lam: float
    iterations: int
    seed: int
    projection_radius: float | None = None
    decaying_step: bool = False

    def __post_init__(self):
        if self.trainer not in TRAINERS:
            raise ValueError(f"unknown trainer {self.trainer!r}")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.lam <= 0:
            role = "step scale c" if self.trainer == "zeroone" else "lambda"
            raise ValueError(f"{self.trainer} needs {role} > 0")
        if self.projection_radius is not None and self.projection_radius <= 0:
            raise ValueError("projection_radius must be positive when set")
        if self.decaying_step and self.trainer != "zeroone":
            raise ValueError("decaying_step applies to the zeroone trainer only")

    @property
    def regularized(self) -> bool:
        return self.trainer in ("pegasos", "zeroone_reg")

    def schedule(self) -> StepSchedule:
        if self.regularized:
            return StepSchedule.inverse_lambda_t(self.lam)
        if self.decaying_step:
            return StepSchedule.inverse_sqrt_t(self.lam)
        return StepSchedule.constant_over_sqrt_T(self.lam, self.iterations)


@dataclass(frozen=True, eq=False)
class DualModel:
    """Trained predictor as coefficients over the training samples.

    The activation on a point x is ``sum_i alphas[i] * K(x_i, x)``; a zero
    coefficient means the sample is not a support sample.  ``norm_sq`` is the
    incrementally tracked estimate of ||w||^2 at the end of training.
    """

    alphas: np.ndarray
    kernel: KernelSpec
    train_set: Dataset
    norm_sq: float = 0.0

    @property
    def support_size(self) -> int:
        return int(np.count_nonzero(self.alphas))

    def activations(self, data: Dataset, chunk_size: int = 2048) -> np.ndarray:
        """Prediction activations for every sample of ``data``.

        A kernel domain error is re-raised naming the offending test index.
        """
        dim = max(self.train_set.feature_dim, data.feature_dim)
        rows_train = to_csr(self.train_set.samples, dim)
        out = np.empty(len(data))
        for start in range(0, len(data), chunk_size):
            block = data.samples[start : start + chunk_size]
            rows_block = to_csr(block, dim)
            try:
                kmat = kernel_matrix(self.kernel, rows_block, rows_train)
            except KernelDomainError as exc:
                index = start + exc.pair[0] if exc.pair else start
                raise KernelDomainError(f"test sample {index}: {exc}", pair=exc.pair) from None
            out[start : start + len(block)] = kmat @ self.alphas
        return out

    def norm_squared_exact(self, chunk_size: int = 1024) -> float:
        """Exact ||w||^2 = alpha' G alpha over the training Gram."""
        rows = to_csr(self.train_set.samples, self.train_set.feature_dim)
        total = 0.0
        for start in range(0, len(self.train_set), chunk_size):
            stop = min(start + chunk_size, len(self.train_set))
            kmat = kernel_matrix(self.kernel, rows[start:stop], rows)
            total += float(self.alphas[start:stop] @ (kmat @ self.alphas))
        return total


def draw_indices(seed: int, population: int, count: int) -> np.ndarray:
    """The uniform sample draws used by train(); shared so oracles can replay them."""
    return np.random.default_rng(seed).integers(0, population, size=count)


def _check_kernel_preconditions(kernel: KernelSpec, dataset: Dataset) -> None:
    if kernel.kind == IMPROPER and kernel.base.kind == LINEAR:
        worst = max(s.features.norm() for s in dataset.samples)
        if worst * worst > 1.0 + 1e-9:
            raise ValueError(
                "improper kernel over a linear base requires unit-normalized "
                f"features (max norm {worst:.6g}); apply normalize_unit first"
            )


def train(
    config: TrainerConfig,
    train_set: Dataset,
    checkpoint_every: int = 0,
    on_checkpoint: Callable[[int, DualModel], None] | None = None,
) -> DualModel:
    """Run T dual-form mirror-descent iterations and return the final iterate.

    At iteration t a training index i is drawn uniformly (seeded), the
    activation and loss gradient g are computed, and the update is applied:
    the regularized trainers scale every coefficient by (1 - eta_t*lam) before
    ``alphas[i] -= eta_t*g``; the zeroone trainer applies only the coefficient
    update.  When ``projection_radius`` is set the coefficients are rescaled
    whenever the tracked ||w||^2 exceeds it.  Kernel rows are cached lazily,
    one row per touched training sample.
    """
    m = len(train_set)
    _check_kernel_preconditions(config.kernel, train_set)
    rows_all = to_csr(train_set.samples, train_set.feature_dim)
    labels = train_set.labels()
    schedule = config.schedule()
    lam = config.lam if config.regularized else 0.0
    radius = config.projection_radius

    alphas = np.zeros(m)
    norm_sq = 0.0
    row_cache: list = [None] * m
    indices = draw_indices(config.seed, m, config.iterations)

    for t in range(1, config.iterations + 1):
        i = int(indices[t - 1])
        row = row_cache[i]
        if row is None:
            try:
                row = kernel_matrix(config.kernel, rows_all[i], rows_all).ravel()
            except KernelDomainError as exc:
                raise KernelDomainError(f"iteration {t}: {exc}", pair=exc.pair) from None
            row_cache[i] = row
        activation = float(np.dot(alphas, row))
        grad = float(loss_grad(config.loss, activation, labels[i]))
        eta = step_size(schedule, t)
        if lam > 0.0:
            decay = 1.0 - eta * lam
            alphas *= decay
            norm_sq *= decay * decay
            activation *= decay
        if grad != 0.0:
            delta = -eta * grad
            alphas[i] += delta
            norm_sq += 2.0 * delta * activation + delta * delta * row[i]
        if radius is not None and norm_sq > radius:
            rescale = math.sqrt(radius / norm_sq)
            alphas *= rescale
            norm_sq = radius
        if checkpoint_every and on_checkpoint and (t % checkpoint_every == 0 or t == config.iterations):
            on_checkpoint(
                t, DualModel(alphas.copy(), config.kernel, train_set, max(norm_sq, 0.0))
            )
    return DualModel(alphas, config.kernel, train_set, max(norm_sq, 0.0))


@dataclass(frozen=True, eq=False)
class RegretTrace:
    """Per-iteration online costs f_t(w_t) + r(w_t) of one run."""

    costs: np.ndarray

    def __post_init__(self):
        costs = np.asarray(self.costs, dtype=np.float64)
        if costs.ndim != 1:
            raise ValueError("costs must be a 1-d sequence")
        object.__setattr__(self, "costs", costs)

    def __len__(self) -> int:
        return int(self.costs.size)

    @property
    def cumulative(self) -> np.ndarray:
        return np.cumsum(self.costs)


def regret_of(trace: RegretTrace, comparator_costs) -> float:
    """Cumulative cost of the run minus that of a fixed comparator sequence."""
    comparator = np.asarray(comparator_costs, dtype=np.float64)
    if comparator.ndim != 1 or comparator.size != len(trace):
        raise ValueError(
            f"length mismatch: trace has {len(trace)} costs, comparator {comparator.size}"
        )
    return float(np.sum(trace.costs) - np.sum(comparator))
