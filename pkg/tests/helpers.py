"""Shared builders for test fixtures: tiny datasets and synthetic results."""

from __future__ import annotations

import numpy as np

from metastack import Dataset, MetamodelCandidate, MetamodelResult
from metastack.metrics import compute_metrics


def make_dataset(features, labels, class_names=None, name="toy", ids=None) -> Dataset:
    features = np.asarray(features, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    n_classes = int(labels.max()) + 1
    return Dataset(
        name=name,
        features=features,
        labels=labels,
        class_names=class_names or [f"c{j}" for j in range(n_classes)],
        feature_names=[f"f{j}" for j in range(features.shape[1])],
        instance_ids=ids or [f"i{j:03d}" for j in range(features.shape[0])],
    )


def separable_dataset(n: int = 20, seed: int = 0, gap: float = 2.0) -> Dataset:
    """1-D feature split at 0 plus a noise column; linearly separable."""
    rng = np.random.default_rng(seed)
    half = n // 2
    x = np.concatenate(
        [rng.uniform(gap * 0.25, gap, half), rng.uniform(-gap, -gap * 0.25, n - half)]
    )
    noise = rng.normal(size=n)
    labels = (x > 0).astype(np.int64)
    return make_dataset(np.column_stack([x, noise]), labels, class_names=["neg", "pos"])


def result_from_arrays(candidate_id, labels, proba, algorithm="decision_tree", fit_seconds=0.01):
    proba = np.asarray(proba, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    predicted = proba.argmax(axis=1).astype(np.int64)
    candidate = MetamodelCandidate(
        candidate_id=candidate_id, algorithm=algorithm, hyperparameters={}, seed=0
    )
    return MetamodelResult(
        candidate=candidate,
        oof_probabilities=proba,
        predicted_labels=predicted,
        correct=predicted == labels,
        metrics=compute_metrics(labels, predicted, proba),
        fit_seconds=fit_seconds,
    )


def random_result(rng: np.random.Generator, labels: np.ndarray, candidate_id: str) -> MetamodelResult:
    n = len(labels)
    n_classes = int(labels.max()) + 1
    proba = rng.random((n, n_classes))
    proba /= proba.sum(axis=1, keepdims=True)
    return result_from_arrays(candidate_id, labels, proba)


def write_csv(path, text: str):
    path.write_text(text, encoding="utf-8")
    return path
