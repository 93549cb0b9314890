"""Synthetic data shared by the demo scripts."""

import numpy as np

from mirrorkit import Dataset, parse_libsvm


def teacher_split(n_train, n_test, n_features, seed, margin=0.05, noise=0.0):
    """Unit-norm samples labeled by one random teacher hyperplane."""
    rng = np.random.default_rng(seed)
    teacher = rng.normal(size=n_features)
    teacher /= np.linalg.norm(teacher)
    lines = []
    while len(lines) < n_train + n_test:
        x = rng.normal(size=n_features)
        x /= np.linalg.norm(x)
        activation = x @ teacher
        if abs(activation) < margin:
            continue
        label = 1 if activation >= 0 else -1
        if noise and rng.random() < noise:
            label = -label
        features = " ".join(f"{j + 1}:{float(x[j])!r}" for j in range(n_features))
        lines.append(f"{'+1' if label > 0 else '-1'} {features}")
    train = parse_libsvm("\n".join(lines[:n_train]) + "\n", name="demo-train")
    test = parse_libsvm("\n".join(lines[n_train:]) + "\n", name="demo-test")
    return train, test
