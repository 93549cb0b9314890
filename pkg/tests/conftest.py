"""Shared fixtures: synthetic libsvm data and discovery of the real datasets."""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np
import pytest

from mirrorkit import Dataset, parse_libsvm

REPO_ROOT = Path(__file__).resolve().parent.parent
DATA_ENV = "MIRRORKIT_DATA"

# libsvm binary-classification files the benchmark configs expect (see README).
DATASET_FILES = {
    "splice": ("splice", "splice.t"),
    "adult": ("a1a", "a1a.t"),
    "web": ("w1a", "w1a.t"),
}


def data_root() -> Path:
    return Path(os.environ.get(DATA_ENV, REPO_ROOT / "data"))


def dataset_paths(name: str) -> tuple[Path, Path]:
    train_file, test_file = DATASET_FILES[name]
    return data_root() / train_file, data_root() / test_file


def dataset_available(name: str) -> bool:
    train_path, test_path = dataset_paths(name)
    return train_path.is_file() and test_path.is_file()


def requires_dataset(name: str):
    return pytest.mark.skipif(
        not dataset_available(name),
        reason=(
            f"{name} dataset not present under {data_root()} "
            f"(files {DATASET_FILES[name]}); see README for retrieval"
        ),
    )


def synthetic_text(
    n_samples: int,
    n_features: int,
    seed: int,
    margin: float = 0.05,
    noise: float = 0.0,
    sparsity: float = 1.0,
) -> str:
    """Unit-norm samples labeled by a random teacher hyperplane, libsvm text.

    One generator stream drives teacher and samples, so two calls with the
    same seed but different sizes share their leading samples.
    """
    rng = np.random.default_rng(seed)
    teacher = rng.normal(size=n_features)
    teacher /= np.linalg.norm(teacher)
    lines = []
    while len(lines) < n_samples:
        keep = rng.random(n_features) < sparsity
        if not keep.any():
            keep[rng.integers(0, n_features)] = True
        x = np.zeros(n_features)
        x[keep] = rng.normal(size=int(keep.sum()))
        norm = np.linalg.norm(x)
        if norm == 0.0:
            continue
        x /= norm
        activation = x @ teacher
        if abs(activation) < margin:
            continue
        label = 1 if activation >= 0 else -1
        if noise and rng.random() < noise:
            label = -label
        features = " ".join(f"{j + 1}:{float(x[j])!r}" for j in np.flatnonzero(keep))
        lines.append(f"{'+1' if label > 0 else '-1'} {features}")
    return "\n".join(lines) + "\n"


def synthetic_split(
    n_train: int,
    n_test: int,
    n_features: int,
    seed: int,
    margin: float = 0.05,
    noise: float = 0.0,
    sparsity: float = 1.0,
) -> tuple[Dataset, Dataset]:
    """Train/test datasets labeled by the same teacher."""
    text = synthetic_text(
        n_train + n_test, n_features, seed, margin=margin, noise=noise, sparsity=sparsity
    )
    lines = text.strip().split("\n")
    train = parse_libsvm("\n".join(lines[:n_train]) + "\n", name="synth-train")
    test = parse_libsvm("\n".join(lines[n_train:]) + "\n", name="synth-test")
    return train, test


@pytest.fixture(scope="session")
def toy_split():
    """Small separable split shared by trainer and bench tests."""
    return synthetic_split(80, 150, 10, seed=3, margin=0.05)
