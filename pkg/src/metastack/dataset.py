"""Tabular classification data: ingestion, validation, and stratified folds.

Ingestion is deliberately dependency-free (stdlib ``csv`` + numpy) so every
preprocessing step is deterministic and inspectable:

  - the header row is required; the target column is removed from features;
  - rows with a missing target are dropped;
  - a feature column is numeric iff every observed value parses as a float,
    otherwise it is treated as categorical;
  - missing numeric cells are imputed (column mean by default, or median/zero);
  - categorical columns are one-hot encoded with categories in lexicographic
    order, missing cells becoming the ``__missing__`` category;
  - class labels are mapped to dense integers in order of first appearance,
    with the original values kept in ``class_names``.

Instance identifiers default to ``r<row>`` built from the data-row index in the
source file (zero-padded to the file's width), so they survive row drops.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (
    EmptyDataset,
    InvalidDataset,
    KTooLarge,
    KTooSmall,
    MissingTargetColumn,
    SingleClassDataset,
)

MISSING_TOKENS = frozenset({"", "na", "n/a", "nan", "null", "none", "?"})
MISSING_CATEGORY = "__missing__"

DEFAULT_K = 5
DEFAULT_SEED = 42


@dataclass(frozen=True)
class IngestOptions:
    delimiter: str = ","
    numeric_impute: str = "mean"  # mean | median | zero
    id_column: str | None = None
    name: str | None = None


@dataclass(frozen=True)
class Dataset:
    """Immutable feature matrix + dense integer labels + provenance metadata."""

    name: str
    features: np.ndarray
    labels: np.ndarray
    class_names: list[str]
    feature_names: list[str]
    instance_ids: list[str]

    def __post_init__(self):
        n = self.features.shape[0]
        if n < 2:
            raise EmptyDataset(f"dataset {self.name!r} has {n} instances; need at least 2")
        if self.features.ndim != 2 or self.features.shape[1] < 1:
            raise InvalidDataset("features must be a 2-D matrix with at least one column")
        if len(self.labels) != n or len(self.instance_ids) != n:
            raise InvalidDataset("labels, instance_ids, and feature rows must have equal length")
        if len(self.feature_names) != self.features.shape[1]:
            raise InvalidDataset("feature_names length must match feature column count")
        if len(set(self.instance_ids)) != n:
            raise InvalidDataset("instance_ids must be unique")
        if not np.all(np.isfinite(self.features)):
            raise InvalidDataset("features contain non-finite values after ingestion")
        n_classes = len(self.class_names)
        if n_classes < 2:
            raise SingleClassDataset(f"dataset {self.name!r} has fewer than 2 distinct labels")
        if self.labels.min() < 0 or self.labels.max() >= n_classes:
            raise InvalidDataset("labels must be dense integers in [0, n_classes)")
        if len(np.unique(self.labels)) != n_classes:
            raise InvalidDataset("every class in class_names must appear at least once")

    @property
    def n_instances(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    @property
    def n_classes(self) -> int:
        return len(self.class_names)

    def summary(self) -> dict:
        return {
            "name": self.name,
            "n_instances": self.n_instances,
            "n_features": self.n_features,
            "class_names": list(self.class_names),
        }


@dataclass(frozen=True)
class FoldAssignment:
    """Deterministic stratified fold indices; every instance sits in one fold."""

    k: int
    fold_of: np.ndarray
    seed: int = field(default=DEFAULT_SEED)

    def __post_init__(self):
        if self.k < 2:
            raise KTooSmall(f"k={self.k}; need at least 2 folds")
        if self.fold_of.min() < 0 or self.fold_of.max() >= self.k:
            raise InvalidDataset("fold indices must lie in [0, k)")
        if len(np.unique(self.fold_of)) != self.k:
            raise InvalidDataset("every fold must be non-empty")

    @property
    def n_instances(self) -> int:
        return len(self.fold_of)

    def test_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.fold_of == fold)

    def train_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.fold_of != fold)


def _is_missing(cell: str) -> bool:
    return cell.strip().lower() in MISSING_TOKENS


def _parses_as_float(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def _impute_value(observed: list[float], strategy: str) -> float:
    if not observed:
        return 0.0
    if strategy == "mean":
        return float(np.mean(observed))
    if strategy == "median":
        return float(np.median(observed))
    if strategy == "zero":
        return 0.0
    raise InvalidDataset(f"unknown numeric_impute strategy {strategy!r}")


def load_dataset(path: str | Path, target_column: str, options: IngestOptions | None = None) -> Dataset:
    """Read a delimited text file with a header row into a validated Dataset."""
    options = options or IngestOptions()
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"dataset file not found: {path}")

    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh, delimiter=options.delimiter)
        rows = [row for row in reader if row]
    if not rows:
        raise EmptyDataset(f"{path} is empty")
    header, data_rows = [c.strip() for c in rows[0]], rows[1:]
    if target_column not in header:
        raise MissingTargetColumn(f"target column {target_column!r} not in header {header}")
    if not data_rows:
        raise EmptyDataset(f"{path} has a header but no data rows")

    target_idx = header.index(target_column)
    id_idx = None
    if options.id_column is not None:
        if options.id_column not in header:
            raise InvalidDataset(f"id column {options.id_column!r} not in header")
        id_idx = header.index(options.id_column)

    id_width = len(str(len(data_rows) - 1))
    kept_rows: list[list[str]] = []
    instance_ids: list[str] = []
    raw_labels: list[str] = []
    for row_idx, row in enumerate(data_rows):
        if len(row) != len(header):
            raise InvalidDataset(f"row {row_idx} has {len(row)} cells, header has {len(header)}")
        target = row[target_idx].strip()
        if _is_missing(target):
            continue
        kept_rows.append(row)
        raw_labels.append(target)
        if id_idx is not None:
            instance_ids.append(row[id_idx].strip())
        else:
            instance_ids.append(f"r{row_idx:0{id_width}d}")

    if not kept_rows:
        raise EmptyDataset(f"{path}: every row has a missing target")

    # Dense labels in order of first appearance.
    class_names: list[str] = []
    label_of: dict[str, int] = {}
    for value in raw_labels:
        if value not in label_of:
            label_of[value] = len(class_names)
            class_names.append(value)
    if len(class_names) < 2:
        raise SingleClassDataset(f"target column {target_column!r} has a single distinct value")
    labels = np.array([label_of[v] for v in raw_labels], dtype=np.int64)

    feature_indices = [
        i for i in range(len(header)) if i != target_idx and not (id_idx is not None and i == id_idx)
    ]
    columns: list[np.ndarray] = []
    feature_names: list[str] = []
    for col_idx in feature_indices:
        col_name = header[col_idx]
        cells = [row[col_idx].strip() for row in kept_rows]
        observed = [c for c in cells if not _is_missing(c)]
        if all(_parses_as_float(c) for c in observed):
            fill = _impute_value([float(c) for c in observed], options.numeric_impute)
            values = np.array([float(c) if not _is_missing(c) else fill for c in cells])
            columns.append(values)
            feature_names.append(col_name)
        else:
            tokens = [c if not _is_missing(c) else MISSING_CATEGORY for c in cells]
            for category in sorted(set(tokens)):
                columns.append(np.array([1.0 if t == category else 0.0 for t in tokens]))
                feature_names.append(f"{col_name}={category}")

    if not columns:
        raise InvalidDataset(f"{path}: no feature columns besides the target")
    features = np.column_stack(columns).astype(np.float64)

    name = options.name or path.stem
    return Dataset(
        name=name,
        features=features,
        labels=labels,
        class_names=class_names,
        feature_names=feature_names,
        instance_ids=instance_ids,
    )


def stratified_kfold(ds: Dataset, k: int = DEFAULT_K, seed: int = DEFAULT_SEED) -> FoldAssignment:
    """Deal each class round-robin into k folds after a seeded per-class shuffle.

    Per fold and class the count is floor or ceil of n_c/k, so the
    stratification bound |count(f,c) - n_c/k| <= 1 holds by construction.
    """
    if k < 2:
        raise KTooSmall(f"k={k}; need at least 2 folds")
    class_counts = np.bincount(ds.labels, minlength=ds.n_classes)
    smallest = int(class_counts.min())
    if k > smallest:
        raise KTooLarge(f"k={k} exceeds the smallest class count {smallest}")

    rng = np.random.default_rng(seed)
    fold_of = np.full(ds.n_instances, -1, dtype=np.int64)
    offset = 0
    for c in range(ds.n_classes):
        idx = np.flatnonzero(ds.labels == c)
        rng.shuffle(idx)
        for j, i in enumerate(idx):
            fold_of[i] = (j + offset) % k
        # Rotate the dealing start so remainder instances spread across folds.
        offset = (offset + len(idx)) % k
    return FoldAssignment(k=k, fold_of=fold_of, seed=seed)
