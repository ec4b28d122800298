"""Metamodel grid: enumerate candidates, evaluate each honestly, run experiments.

Every candidate is scored with the same out-of-fold protocol as the base layer
(fit on the fold complement, predict the held fold), so level-1 metrics are
never computed on instances the fitted clone saw. A candidate that fails to
train is recorded as a failure marker and never perturbs the others: grid
evaluation is isolation-by-candidate.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

import numpy as np

from .algorithms import algorithm_index, derive_seed, stable_digest, validate_hyperparameters
from .config import ExperimentConfig
from .dataset import Dataset, FoldAssignment, IngestOptions, load_dataset, stratified_kfold
from .ensemble import BaseModelSpec, MetaFeatureMatrix, oof_probabilities, train_base_layer
from .errors import EmptyGrid, LengthMismatch, ModelTrainingFailure
from .metrics import MetricVector, compute_metrics


@dataclass(frozen=True)
class MetamodelCandidate:
    candidate_id: str
    algorithm: str
    hyperparameters: dict[str, Any] = field(default_factory=dict)
    seed: int = 0

    def as_dict(self) -> dict:
        return {
            "candidate_id": self.candidate_id,
            "algorithm": self.algorithm,
            "hyperparameters": dict(self.hyperparameters),
            "seed": self.seed,
        }


@dataclass(frozen=True)
class MetamodelResult:
    candidate: MetamodelCandidate
    oof_probabilities: np.ndarray
    predicted_labels: np.ndarray
    correct: np.ndarray
    metrics: MetricVector
    fit_seconds: float


def candidate_id_for(algorithm: str, hyperparameters: dict[str, Any]) -> str:
    """Deterministic id: algorithm name plus a content digest of its settings."""
    digest = stable_digest({"algorithm": algorithm, "hyperparameters": hyperparameters})
    return f"{algorithm}-{digest}"


def enumerate_candidates(
    grid: dict[str, list[dict[str, Any]]], seed: int
) -> list[MetamodelCandidate]:
    """Candidates in canonical order: algorithm order, then settings order.

    Hyperparameter maps are ordered by their canonical JSON text, so the same
    grid enumerates identically no matter how the config listed it. Exact
    duplicates collapse to one candidate.
    """
    if not grid or all(not presets for presets in grid.values()):
        raise EmptyGrid("metamodel grid is empty")
    candidates: list[MetamodelCandidate] = []
    seen: set[str] = set()
    for algorithm in sorted(grid, key=algorithm_index):
        presets = grid[algorithm]
        for hp in sorted(presets, key=lambda p: json.dumps(p, sort_keys=True, separators=(",", ":"))):
            validate_hyperparameters(algorithm, hp)
            cid = candidate_id_for(algorithm, hp)
            if cid in seen:
                continue
            seen.add(cid)
            candidates.append(
                MetamodelCandidate(
                    candidate_id=cid,
                    algorithm=algorithm,
                    hyperparameters=dict(hp),
                    seed=derive_seed(cid, seed),
                )
            )
    return candidates


def evaluate_candidate(
    c: MetamodelCandidate,
    meta: MetaFeatureMatrix,
    labels: np.ndarray,
    folds: FoldAssignment,
    extra_features: np.ndarray | None = None,
) -> MetamodelResult:
    """Fit the candidate out-of-fold on the meta-features and score it.

    ``extra_features`` (e.g. raw dataset columns) are appended to the
    meta-feature matrix when the experiment asked for them.
    """
    labels = np.asarray(labels, dtype=np.int64)
    if meta.n_instances != len(labels):
        raise LengthMismatch(f"meta has {meta.n_instances} rows, labels {len(labels)}")
    if folds.n_instances != len(labels):
        raise LengthMismatch(f"folds cover {folds.n_instances} instances, labels {len(labels)}")
    features = meta.values
    if extra_features is not None:
        features = np.hstack([features, np.asarray(extra_features, dtype=np.float64)])
    n_classes = int(labels.max()) + 1

    spec = BaseModelSpec(
        model_id=c.candidate_id,
        algorithm=c.algorithm,
        hyperparameters=c.hyperparameters,
        seed=c.seed,
    )
    started = time.perf_counter()
    try:
        proba = oof_probabilities(spec, features, labels, folds, n_classes)
    except ModelTrainingFailure as exc:
        raise ModelTrainingFailure(c.candidate_id, exc.cause) from exc
    fit_seconds = time.perf_counter() - started

    predicted = proba.argmax(axis=1).astype(np.int64)  # ties resolve to lowest class
    correct = predicted == labels
    metrics = compute_metrics(labels, predicted, proba)
    return MetamodelResult(
        candidate=c,
        oof_probabilities=proba,
        predicted_labels=predicted,
        correct=correct,
        metrics=metrics,
        fit_seconds=fit_seconds,
    )


def run_experiment(
    ds: Dataset,
    base_specs: list[BaseModelSpec],
    grid: dict[str, list[dict[str, Any]]],
    config: ExperimentConfig,
    out_dir: str | Path | None = None,
    overwrite: bool = False,
):
    """End-to-end flow: folds -> base layer -> candidate grid -> record.

    Base-layer failures abort (the whole stack depends on them); candidate
    failures are recorded inline and the grid continues. The record is
    persisted when ``out_dir`` is given and returned either way.
    """
    from .store import ExperimentRecord, save_experiment

    folds = stratified_kfold(ds, config.k, config.seed)
    layer = train_base_layer(ds, base_specs, folds)
    candidates = enumerate_candidates(grid, config.seed)
    extra = ds.features if config.include_raw_features else None

    results: list[MetamodelResult] = []
    failures: list[dict[str, str]] = []
    for candidate in candidates:
        try:
            results.append(
                evaluate_candidate(
                    candidate, layer.training_meta_features, ds.labels, folds, extra_features=extra
                )
            )
        except ModelTrainingFailure as exc:
            failures.append({"candidate_id": candidate.candidate_id, "message": str(exc.cause)})

    record = ExperimentRecord(
        experiment_id=config.experiment_id(),
        schema_version=1,
        created_at=datetime.now(timezone.utc).isoformat(),
        config=config.canonical_dict(),
        dataset_summary=ds.summary(),
        instance_ids=list(ds.instance_ids),
        labels=ds.labels.tolist(),
        results=results,
        failures=failures,
    )
    if out_dir is not None:
        save_experiment(record, out_dir, overwrite=overwrite)
    return record


def run_from_config(
    config: ExperimentConfig,
    out_dir: str | Path | None = None,
    overwrite: bool = False,
):
    """Load the configured dataset (path or inline CSV) and run the experiment."""
    import tempfile

    if config.dataset_inline is not None:
        with tempfile.NamedTemporaryFile(
            "w", suffix=".csv", delete=False, encoding="utf-8"
        ) as tmp:
            tmp.write(config.dataset_inline)
            inline_path = tmp.name
        try:
            options = config.ingest_options()
            if options.name is None:
                options = IngestOptions(
                    delimiter=options.delimiter, id_column=options.id_column, name="inline"
                )
            ds = load_dataset(inline_path, config.target_column, options)
        finally:
            Path(inline_path).unlink(missing_ok=True)
    else:
        ds = load_dataset(config.dataset, config.target_column, config.ingest_options())
    return run_experiment(
        ds,
        config.resolved_base_specs(),
        config.resolved_grid(),
        config,
        out_dir=out_dir,
        overwrite=overwrite,
    )
