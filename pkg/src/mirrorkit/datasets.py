"""libsvm-format parsing, feature normalization, and dataset summaries."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy import sparse


class ParseError(ValueError):
    """Malformed libsvm input; the message names the 1-based line number."""


_POSITIVE_TOKENS = frozenset({"+1", "1"})
_NEGATIVE_TOKENS = frozenset({"-1", "0"})


@dataclass(frozen=True, eq=False)
class SparseVector:
    """Feature vector stored as parallel index/value arrays.

    Indices are 1-based (as on disk) and strictly increasing, explicit zeros
    are never stored, and every value is finite.
    """

    indices: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        idx = np.array(self.indices, dtype=np.int64, copy=True)
        val = np.array(self.values, dtype=np.float64, copy=True)
        if idx.ndim != 1 or idx.shape != val.shape:
            raise ValueError("indices and values must be 1-d arrays of equal length")
        if idx.size:
            if idx[0] < 1 or np.any(np.diff(idx) <= 0):
                raise ValueError("feature indices must be >= 1 and strictly increasing")
            if not np.all(np.isfinite(val)):
                raise ValueError("feature values must be finite")
            if np.any(val == 0.0):
                raise ValueError("explicit zero values must not be stored")
        idx.setflags(write=False)
        val.setflags(write=False)
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "values", val)

    @classmethod
    def from_dict(cls, entries: dict) -> "SparseVector":
        items = sorted((int(i), float(v)) for i, v in entries.items() if float(v) != 0.0)
        idx = np.array([i for i, _ in items], dtype=np.int64)
        val = np.array([v for _, v in items], dtype=np.float64)
        return cls(idx, val)

    def to_dict(self) -> dict:
        return {int(i): float(v) for i, v in zip(self.indices, self.values)}

    @property
    def nnz(self) -> int:
        return int(self.indices.size)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.values * self.values)))

    def __eq__(self, other):
        if not isinstance(other, SparseVector):
            return NotImplemented
        return np.array_equal(self.indices, other.indices) and np.array_equal(
            self.values, other.values
        )


@dataclass(frozen=True)
class LabeledSample:
    features: SparseVector
    label: int  # -1 or +1

    def __post_init__(self):
        if self.label not in (-1, 1):
            raise ValueError(f"label must be -1 or +1, got {self.label!r}")


@dataclass(frozen=True)
class Dataset:
    samples: tuple
    feature_dim: int
    name: str = "dataset"

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(self.samples))
        if len(self.samples) < 1:
            raise ValueError("a dataset needs at least one sample")
        max_index = max((s.features.indices[-1] if s.features.nnz else 0) for s in self.samples)
        if self.feature_dim < 1 or self.feature_dim < max_index:
            raise ValueError(
                f"feature_dim {self.feature_dim} below max feature index {max_index}"
            )

    def __len__(self) -> int:
        return len(self.samples)

    def labels(self) -> np.ndarray:
        return np.array([s.label for s in self.samples], dtype=np.float64)


@dataclass(frozen=True)
class DatasetStats:
    sample_count: int
    feature_dim: int
    positives: int
    negatives: int
    negative_fraction: float


def parse_libsvm(source, name: str = "dataset") -> Dataset:
    """Parse libsvm interchange text into a Dataset.

    Each non-empty line is ``<label> <idx>:<val> <idx>:<val> ...`` with 1-based,
    strictly increasing indices.  Labels ``+1``/``1`` map to +1 and ``-1``/``0``
    map to -1.  ``#`` starts a comment that runs to the end of the line; both
    LF and CRLF line endings are accepted.  Explicit ``idx:0`` entries are
    dropped, but still count toward the inferred feature dimension.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    samples = []
    max_index = 0
    for lineno, raw in enumerate(source, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        label_token = tokens[0]
        if label_token in _POSITIVE_TOKENS:
            label = 1
        elif label_token in _NEGATIVE_TOKENS:
            label = -1
        else:
            raise ParseError(f"line {lineno}: unrecognized label {label_token!r}")
        indices = []
        values = []
        previous = 0
        for token in tokens[1:]:
            head, sep, tail = token.partition(":")
            if not sep:
                raise ParseError(f"line {lineno}: expected index:value, got {token!r}")
            try:
                index = int(head)
                value = float(tail)
            except ValueError:
                raise ParseError(f"line {lineno}: non-numeric token {token!r}") from None
            if index < 1:
                raise ParseError(f"line {lineno}: feature index {index} must be >= 1")
            if index <= previous:
                raise ParseError(
                    f"line {lineno}: feature index {index} not strictly increasing"
                )
            if not math.isfinite(value):
                raise ParseError(f"line {lineno}: non-finite value in {token!r}")
            previous = index
            max_index = max(max_index, index)
            if value != 0.0:
                indices.append(index)
                values.append(value)
        features = SparseVector(
            np.array(indices, dtype=np.int64), np.array(values, dtype=np.float64)
        )
        samples.append(LabeledSample(features, label))
    if not samples:
        raise ParseError("empty stream: no samples found")
    return Dataset(tuple(samples), max(max_index, 1), name)


def load_libsvm(path, name: str | None = None) -> Dataset:
    """Parse a libsvm file from disk (UTF-8)."""
    path = Path(path)
    with path.open("r", encoding="utf-8") as handle:
        return parse_libsvm(handle, name=name or path.name)


def dump_libsvm(dataset: Dataset) -> str:
    """Serialize a Dataset back to libsvm text; re-parsing is loss-free."""
    lines = []
    for sample in dataset.samples:
        parts = ["+1" if sample.label > 0 else "-1"]
        parts.extend(
            f"{int(i)}:{float(v)!r}"
            for i, v in zip(sample.features.indices, sample.features.values)
        )
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def normalize_unit(dataset: Dataset) -> Dataset:
    """Scale every sample with nonzero norm to Euclidean norm 1.

    All-zero samples and labels pass through unchanged.  Idempotent up to
    rounding at the 1e-12 level.
    """
    scaled = []
    for sample in dataset.samples:
        norm = sample.features.norm()
        if norm == 0.0:
            scaled.append(sample)
        else:
            features = SparseVector(sample.features.indices, sample.features.values / norm)
            scaled.append(LabeledSample(features, sample.label))
    return Dataset(tuple(scaled), dataset.feature_dim, dataset.name)


def dataset_stats(dataset: Dataset) -> DatasetStats:
    """Exact sample counts and the negative-class fraction."""
    positives = sum(1 for s in dataset.samples if s.label > 0)
    negatives = len(dataset) - positives
    return DatasetStats(
        sample_count=len(dataset),
        feature_dim=dataset.feature_dim,
        positives=positives,
        negatives=negatives,
        negative_fraction=negatives / len(dataset),
    )


def dot(x: SparseVector, y: SparseVector) -> float:
    """Sparse inner product; bitwise symmetric in its arguments."""
    _, ix, iy = np.intersect1d(x.indices, y.indices, assume_unique=True, return_indices=True)
    if ix.size == 0:
        return 0.0
    return float(np.sum(x.values[ix] * y.values[iy]))


def squared_distance(x: SparseVector, y: SparseVector) -> float:
    """Sparse squared Euclidean distance; bitwise symmetric in its arguments."""
    _, ix, iy = np.intersect1d(x.indices, y.indices, assume_unique=True, return_indices=True)
    shared = np.sum((x.values[ix] - y.values[iy]) ** 2) if ix.size else 0.0
    mask_x = np.ones(x.values.size, dtype=bool)
    mask_x[ix] = False
    mask_y = np.ones(y.values.size, dtype=bool)
    mask_y[iy] = False
    only_x = np.sum(x.values[mask_x] ** 2) if mask_x.any() else 0.0
    only_y = np.sum(y.values[mask_y] ** 2) if mask_y.any() else 0.0
    return float(shared + (only_x + only_y))


def to_csr(samples: Sequence[LabeledSample] | Iterable[LabeledSample], feature_dim: int):
    """Pack samples into a CSR matrix with 0-based columns, one row per sample."""
    samples = list(samples)
    indptr = np.zeros(len(samples) + 1, dtype=np.int64)
    index_blocks = []
    value_blocks = []
    for row, sample in enumerate(samples):
        index_blocks.append(sample.features.indices - 1)
        value_blocks.append(sample.features.values)
        indptr[row + 1] = indptr[row] + sample.features.nnz
    indices = np.concatenate(index_blocks) if index_blocks else np.zeros(0, dtype=np.int64)
    data = np.concatenate(value_blocks) if value_blocks else np.zeros(0)
    return sparse.csr_matrix((data, indices, indptr), shape=(len(samples), feature_dim))
