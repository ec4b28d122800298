"""Stacking base layer: out-of-fold meta-features plus full refits for inference.

For every base model and every fold, a fresh estimator is fitted on the fold's
complement and predicts class probabilities for the held-out fold. Stitching
those held-out blocks together gives the meta-feature matrix: each instance's
row was produced by models that never saw it, so the level-1 training input is
leakage-free by construction. Each base model is additionally refit on the full
dataset for predicting genuinely new data.

Meta-feature columns are laid out model-major, class-minor:
``[(m0, c0), (m0, c1), ..., (m1, c0), ...]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .algorithms import build_estimator, predict_proba_dense
from .dataset import Dataset, FoldAssignment
from .errors import InvalidDataset, ModelTrainingFailure, ShapeMismatch


@dataclass(frozen=True)
class BaseModelSpec:
    model_id: str
    algorithm: str
    hyperparameters: dict[str, Any] = field(default_factory=dict)
    seed: int = 0

    def build(self):
        return build_estimator(self.algorithm, self.hyperparameters, self.seed)

    def as_dict(self) -> dict:
        return {
            "model_id": self.model_id,
            "algorithm": self.algorithm,
            "hyperparameters": dict(self.hyperparameters),
            "seed": self.seed,
        }


@dataclass(frozen=True)
class MetaFeatureMatrix:
    """Out-of-fold base-model probabilities, one (model, class) pair per column."""

    values: np.ndarray
    column_layout: list[tuple[str, int]]
    source_folds: FoldAssignment

    @property
    def n_instances(self) -> int:
        return self.values.shape[0]

    def block(self, model_index: int, n_classes: int) -> np.ndarray:
        start = model_index * n_classes
        return self.values[:, start : start + n_classes]


@dataclass(frozen=True)
class BaseLayer:
    specs: list[BaseModelSpec]
    fitted_full: list[Any]
    training_meta_features: MetaFeatureMatrix
    n_features: int
    n_classes: int


def _fit_spec(spec: BaseModelSpec, features: np.ndarray, labels: np.ndarray):
    estimator = spec.build()
    try:
        estimator.fit(features, labels)
    except Exception as exc:  # noqa: BLE001 - diagnosable abort per contract
        raise ModelTrainingFailure(spec.model_id, exc) from exc
    return estimator


def oof_probabilities(
    spec: BaseModelSpec,
    features: np.ndarray,
    labels: np.ndarray,
    folds: FoldAssignment,
    n_classes: int,
) -> np.ndarray:
    """Out-of-fold probability matrix (n_instances x n_classes) for one model.

    Shared by the base layer and the metamodel evaluator so both levels follow
    the identical fit-on-complement / predict-held-fold protocol.
    """
    n = features.shape[0]
    out = np.zeros((n, n_classes), dtype=np.float64)
    for fold in range(folds.k):
        train_idx = folds.train_indices(fold)
        test_idx = folds.test_indices(fold)
        estimator = _fit_spec(spec, features[train_idx], labels[train_idx])
        try:
            out[test_idx] = predict_proba_dense(estimator, features[test_idx], n_classes)
        except Exception as exc:  # noqa: BLE001
            raise ModelTrainingFailure(spec.model_id, exc) from exc
    return out


def train_base_layer(ds: Dataset, specs: list[BaseModelSpec], folds: FoldAssignment) -> BaseLayer:
    """Fit every base model per-fold (meta-features) and on the full data."""
    if not specs:
        raise InvalidDataset("base layer needs at least one model spec")
    ids = [spec.model_id for spec in specs]
    if len(set(ids)) != len(ids):
        raise InvalidDataset(f"duplicate base model ids: {ids}")
    if folds.n_instances != ds.n_instances:
        raise ShapeMismatch(
            f"fold assignment covers {folds.n_instances} instances, dataset has {ds.n_instances}"
        )

    n_classes = ds.n_classes
    values = np.zeros((ds.n_instances, len(specs) * n_classes), dtype=np.float64)
    fitted_full = []
    for si, spec in enumerate(specs):
        values[:, si * n_classes : (si + 1) * n_classes] = oof_probabilities(
            spec, ds.features, ds.labels, folds, n_classes
        )
        fitted_full.append(_fit_spec(spec, ds.features, ds.labels))

    layout = [(spec.model_id, c) for spec in specs for c in range(n_classes)]
    meta = MetaFeatureMatrix(values=values, column_layout=layout, source_folds=folds)
    return BaseLayer(
        specs=list(specs),
        fitted_full=fitted_full,
        training_meta_features=meta,
        n_features=ds.n_features,
        n_classes=n_classes,
    )


def base_predict(layer: BaseLayer, features: np.ndarray) -> np.ndarray:
    """Probabilities from the full-data refits, training column layout."""
    features = np.asarray(features, dtype=np.float64)
    if features.ndim != 2 or features.shape[1] != layer.n_features:
        raise ShapeMismatch(
            f"expected {layer.n_features} feature columns, got shape {features.shape}"
        )
    n_classes = layer.n_classes
    out = np.zeros((features.shape[0], len(layer.specs) * n_classes), dtype=np.float64)
    for si, estimator in enumerate(layer.fitted_full):
        out[:, si * n_classes : (si + 1) * n_classes] = predict_proba_dense(
            estimator, features, n_classes
        )
    return out
