"""Base and composed kernels, Gram assembly, and PSD validation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .datasets import SparseVector, dot, squared_distance

LINEAR = "linear"
GAUSSIAN = "gaussian"
IMPROPER = "improper"

DEFAULT_NU = 0.5


class KernelDomainError(ValueError):
    """The composed kernel's geometric series diverges for the offending pair."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


@dataclass(frozen=True)
class KernelSpec:
    """Closed description of a kernel: linear, gaussian(gamma), or improper(nu, base).

    The improper variant evaluates ``1 / (1 - nu * base(x, y))`` and composes
    one level deep only.
    """

    kind: str
    gamma: float | None = None
    nu: float | None = None
    base: "KernelSpec | None" = None

    def __post_init__(self):
        if self.kind == LINEAR:
            if self.gamma is not None or self.nu is not None or self.base is not None:
                raise ValueError("linear kernel takes no parameters")
        elif self.kind == GAUSSIAN:
            if self.gamma is None or self.gamma <= 0:
                raise ValueError("gaussian kernel needs gamma > 0")
            if self.nu is not None or self.base is not None:
                raise ValueError("gaussian kernel takes only gamma")
        elif self.kind == IMPROPER:
            if self.nu is None or not 0.0 < self.nu < 1.0:
                raise ValueError("improper kernel needs nu in (0, 1)")
            if self.base is None or self.base.kind == IMPROPER:
                raise ValueError("improper kernel composes one level over linear/gaussian")
        else:
            raise ValueError(f"unknown kernel kind {self.kind!r}")

    @classmethod
    def linear(cls) -> "KernelSpec":
        return cls(LINEAR)

    @classmethod
    def gaussian(cls, gamma: float) -> "KernelSpec":
        return cls(GAUSSIAN, gamma=float(gamma))

    @classmethod
    def improper(cls, nu: float = DEFAULT_NU, base: "KernelSpec | None" = None) -> "KernelSpec":
        return cls(IMPROPER, nu=float(nu), base=base if base is not None else cls(LINEAR))

    @classmethod
    def parse(cls, text: str) -> "KernelSpec":
        """Parse the config grammar: ``linear``, ``gaussian:<g>``, ``improper:<nu>:<base>``."""
        head, _, rest = text.strip().partition(":")
        if head == LINEAR:
            if rest:
                raise ValueError(f"linear kernel takes no parameters: {text!r}")
            return cls.linear()
        if head == GAUSSIAN:
            try:
                return cls.gaussian(float(rest))
            except ValueError:
                raise ValueError(f"bad gaussian kernel spec {text!r}") from None
        if head == IMPROPER:
            nu_text, sep, base_text = rest.partition(":")
            if not sep:
                raise ValueError(f"improper kernel needs a base spec: {text!r}")
            try:
                nu = float(nu_text)
            except ValueError:
                raise ValueError(f"bad improper kernel spec {text!r}") from None
            return cls.improper(nu, cls.parse(base_text))
        raise ValueError(f"unknown kernel spec {text!r}")

    def __str__(self) -> str:
        if self.kind == LINEAR:
            return LINEAR
        if self.kind == GAUSSIAN:
            return f"{GAUSSIAN}:{self.gamma:g}"
        return f"{IMPROPER}:{self.nu:g}:{self.base}"


def kernel_eval(spec: KernelSpec, x: SparseVector, x2: SparseVector) -> float:
    """Evaluate one kernel entry; symmetric in x and x2."""
    if spec.kind == LINEAR:
        return dot(x, x2)
    if spec.kind == GAUSSIAN:
        return math.exp(-spec.gamma * squared_distance(x, x2))
    base_value = kernel_eval(spec.base, x, x2)
    scaled = spec.nu * base_value
    if scaled >= 1.0:
        raise KernelDomainError(
            f"improper kernel diverges: nu * base = {scaled:.6g} >= 1"
        )
    return 1.0 / (1.0 - scaled)


def gram_matrix(spec: KernelSpec, samples: Sequence[SparseVector]) -> np.ndarray:
    """Dense Gram matrix; the upper triangle is computed and mirrored."""
    if len(samples) == 0:
        raise ValueError("gram_matrix needs at least one sample")
    n = len(samples)
    gram = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            try:
                value = kernel_eval(spec, samples[i], samples[j])
            except KernelDomainError as exc:
                raise KernelDomainError(f"pair ({i}, {j}): {exc}", pair=(i, j)) from None
            gram[i, j] = value
            gram[j, i] = value
    return gram


@dataclass(frozen=True)
class PsdReport:
    min_eigenvalue: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.min_eigenvalue >= -self.tol


def psd_check(gram, tol: float = 1e-8, max_size: int = 256) -> PsdReport:
    """Check positive semidefiniteness via the smallest symmetric eigenvalue."""
    gram = np.asarray(gram, dtype=np.float64)
    if gram.ndim != 2 or gram.shape[0] != gram.shape[1]:
        raise ValueError("psd_check needs a square matrix")
    if gram.shape[0] > max_size:
        raise ValueError(f"matrix size {gram.shape[0]} exceeds cap {max_size}")
    asymmetry = float(np.max(np.abs(gram - gram.T))) if gram.size else 0.0
    if asymmetry > 1e-9:
        raise ValueError(f"matrix is not symmetric (max asymmetry {asymmetry:.3g})")
    smallest = float(np.linalg.eigvalsh(gram)[0])
    return PsdReport(min_eigenvalue=smallest, tol=tol)


def kernel_matrix(spec: KernelSpec, rows_x, rows_y) -> np.ndarray:
    """Dense kernel block between two CSR sample matrices (rows are samples).

    Vectorized counterpart of pairwise kernel_eval, used by the trainers and
    evaluation; agreement between the two paths is covered by tests.
    """
    if spec.kind == LINEAR:
        return (rows_x @ rows_y.T).toarray().astype(np.float64, copy=False)
    if spec.kind == GAUSSIAN:
        sq_x = np.asarray(rows_x.multiply(rows_x).sum(axis=1)).ravel()
        sq_y = np.asarray(rows_y.multiply(rows_y).sum(axis=1)).ravel()
        cross = (rows_x @ rows_y.T).toarray().astype(np.float64, copy=False)
        distances = sq_x[:, None] + sq_y[None, :] - 2.0 * cross
        np.maximum(distances, 0.0, out=distances)
        return np.exp(-spec.gamma * distances)
    base = kernel_matrix(spec.base, rows_x, rows_y)
    scaled = spec.nu * base
    if scaled.size and scaled.max() >= 1.0:
        i, j = np.unravel_index(int(np.argmax(scaled)), scaled.shape)
        raise KernelDomainError(
            f"pair ({i}, {j}): improper kernel diverges: nu * base = {scaled[i, j]:.6g} >= 1",
            pair=(int(i), int(j)),
        )
    return 1.0 / (1.0 - scaled)
