"""Loss values and activation gradients, plus the zero-one metric.

All three operations accept scalars or numpy arrays for the activation and
label arguments; labels use the canonical {-1, +1} form throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import expit

HINGE = "hinge"
SIGMOID01 = "sigmoid01"

# Beyond this point 4*L*a has saturated; short-circuit to the limit value.
_SATURATION = 500.0


@dataclass(frozen=True)
class LossSpec:
    """Loss family: plain hinge, or the Lipschitz sigmoid surrogate of 0-1 loss."""

    kind: str
    lipschitz: float = 1.0

    def __post_init__(self):
        if self.kind not in (HINGE, SIGMOID01):
            raise ValueError(f"unknown loss kind {self.kind!r}")
        if self.kind == SIGMOID01 and self.lipschitz <= 0:
            raise ValueError("sigmoid01 loss needs lipschitz > 0")

    @classmethod
    def hinge(cls) -> "LossSpec":
        return cls(HINGE)

    @classmethod
    def sigmoid01(cls, lipschitz: float = 1.0) -> "LossSpec":
        return cls(SIGMOID01, lipschitz=float(lipschitz))

    @classmethod
    def parse(cls, text: str) -> "LossSpec":
        """Parse the config grammar: ``hinge`` or ``sigmoid01:<L>``."""
        head, sep, rest = text.strip().partition(":")
        if head == HINGE:
            if rest:
                raise ValueError(f"hinge loss takes no parameters: {text!r}")
            return cls.hinge()
        if head == SIGMOID01:
            if not sep:
                return cls.sigmoid01()
            try:
                return cls.sigmoid01(float(rest))
            except ValueError:
                raise ValueError(f"bad sigmoid01 loss spec {text!r}") from None
        raise ValueError(f"unknown loss spec {text!r}")

    def __str__(self) -> str:
        if self.kind == HINGE:
            return HINGE
        return f"{SIGMOID01}:{self.lipschitz:g}"


def sigmoid_transfer(activation, lipschitz: float = 1.0):
    """The transfer 1 / (1 + exp(-4*L*a)), saturated to its limits for huge |a|."""
    z = 4.0 * lipschitz * np.asarray(activation, dtype=np.float64)
    value = expit(np.clip(z, -_SATURATION, _SATURATION))
    return np.where(z > _SATURATION, 1.0, np.where(z < -_SATURATION, 0.0, value))[()]


def loss_value(spec: LossSpec, activation, label):
    """Loss at activation a = <w, phi(x)> for a label in {-1, +1}."""
    activation = np.asarray(activation, dtype=np.float64)
    label = np.asarray(label, dtype=np.float64)
    if spec.kind == HINGE:
        return np.maximum(0.0, 1.0 - label * activation)[()]
    target = (label + 1.0) / 2.0
    return np.abs(sigmoid_transfer(activation, spec.lipschitz) - target)[()]


def loss_grad(spec: LossSpec, activation, label):
    """Derivative of loss_value with respect to the activation.

    The hinge subgradient at the kink y*a = 1 is 0.
    """
    activation = np.asarray(activation, dtype=np.float64)
    label = np.asarray(label, dtype=np.float64)
    if spec.kind == HINGE:
        return np.where(label * activation < 1.0, -label, 0.0)[()]
    transfer = sigmoid_transfer(activation, spec.lipschitz)
    slope = 4.0 * spec.lipschitz * transfer * (1.0 - transfer)
    sign = np.where(label > 0, -1.0, 1.0)
    return (sign * slope)[()]


def zero_one_error(activation, label):
    """1 if the predicted class differs from the label, else 0; a = 0 predicts +1."""
    activation = np.asarray(activation, dtype=np.float64)
    label = np.asarray(label, dtype=np.float64)
    predicted = np.where(activation >= 0.0, 1.0, -1.0)
    return (predicted != label).astype(np.int64)[()]
