"""Experiment persistence: one JSON document per experiment, schema v1.

Files are written atomically (temp file + rename) under ``{root}/{id}.json``.
Floats serialize via Python's shortest round-trip repr, so probabilities and
metrics reload bit-exact. docs/schema.md describes the document layout.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DuplicateExperiment, ExperimentNotFound, SchemaValidationError
from .metamodels import MetamodelCandidate, MetamodelResult
from .metrics import MetricVector

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

_RECORD_KEYS = (
    "experiment_id",
    "schema_version",
    "created_at",
    "config",
    "dataset_summary",
    "instance_ids",
    "labels",
    "results",
    "failures",
)


@dataclass(frozen=True)
class ExperimentRecord:
    experiment_id: str
    schema_version: int
    created_at: str
    config: dict
    dataset_summary: dict
    instance_ids: list[str]
    labels: list[int]
    results: list[MetamodelResult]
    failures: list[dict] = field(default_factory=list)

    def result_for(self, candidate_id: str) -> MetamodelResult | None:
        for result in self.results:
            if result.candidate.candidate_id == candidate_id:
                return result
        return None


def result_to_dict(result: MetamodelResult) -> dict:
    return {
        "candidate": result.candidate.as_dict(),
        "oof_probabilities": [[float(v) for v in row] for row in result.oof_probabilities],
        "predicted_labels": [int(v) for v in result.predicted_labels],
        "correct": [bool(v) for v in result.correct],
        "metrics": result.metrics.as_dict(),
        "fit_seconds": float(result.fit_seconds),
    }


def result_from_dict(d: dict) -> MetamodelResult:
    candidate = MetamodelCandidate(
        candidate_id=d["candidate"]["candidate_id"],
        algorithm=d["candidate"]["algorithm"],
        hyperparameters=d["candidate"]["hyperparameters"],
        seed=d["candidate"]["seed"],
    )
    return MetamodelResult(
        candidate=candidate,
        oof_probabilities=np.asarray(d["oof_probabilities"], dtype=np.float64),
        predicted_labels=np.asarray(d["predicted_labels"], dtype=np.int64),
        correct=np.asarray(d["correct"], dtype=bool),
        metrics=MetricVector.from_dict(d["metrics"]),
        fit_seconds=float(d["fit_seconds"]),
    )


def record_to_dict(record: ExperimentRecord) -> dict:
    return {
        "experiment_id": record.experiment_id,
        "schema_version": record.schema_version,
        "created_at": record.created_at,
        "config": record.config,
        "dataset_summary": record.dataset_summary,
        "instance_ids": list(record.instance_ids),
        "labels": [int(v) for v in record.labels],
        "results": [result_to_dict(r) for r in record.results],
        "failures": list(record.failures),
    }


def record_from_dict(d: dict) -> ExperimentRecord:
    if not isinstance(d, dict):
        raise SchemaValidationError("experiment document must be a JSON object")
    missing = [key for key in _RECORD_KEYS if key not in d]
    if missing:
        raise SchemaValidationError(f"experiment document missing fields: {missing}")
    if d["schema_version"] != SCHEMA_VERSION:
        raise SchemaValidationError(
            f"unsupported schema_version {d['schema_version']!r}; this build reads v{SCHEMA_VERSION}"
        )
    try:
        results = [result_from_dict(r) for r in d["results"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaValidationError(f"malformed result entry: {exc}") from exc
    return ExperimentRecord(
        experiment_id=d["experiment_id"],
        schema_version=d["schema_version"],
        created_at=d["created_at"],
        config=d["config"],
        dataset_summary=d["dataset_summary"],
        instance_ids=list(d["instance_ids"]),
        labels=[int(v) for v in d["labels"]],
        results=results,
        failures=list(d["failures"]),
    )


def comparable_dict(record: ExperimentRecord) -> dict:
    """Record content with volatile fields (created_at, fit timings) removed."""
    d = record_to_dict(record)
    d.pop("created_at")
    for result in d["results"]:
        result.pop("fit_seconds")
    return d


def experiment_path(root: str | Path, experiment_id: str) -> Path:
    return Path(root) / f"{experiment_id}.json"


def save_experiment(record: ExperimentRecord, root: str | Path, overwrite: bool = False) -> Path:
    """Atomically write the record to {root}/{experiment_id}.json."""
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    path = experiment_path(root, record.experiment_id)
    if path.exists() and not overwrite:
        raise DuplicateExperiment(
            f"experiment {record.experiment_id} already stored at {path}; pass overwrite to replace"
        )
    payload = json.dumps(record_to_dict(record), sort_keys=True, separators=(",", ":"), allow_nan=False)
    fd, tmp_name = tempfile.mkstemp(dir=root, prefix=".tmp_", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(payload)
        os.replace(tmp_name, path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise
    return path


def load_experiment(path: str | Path) -> ExperimentRecord:
    path = Path(path)
    if not path.exists():
        raise ExperimentNotFound(f"no experiment file at {path}")
    try:
        with path.open(encoding="utf-8") as fh:
            parsed = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaValidationError(f"{path} is not valid JSON: {exc}") from exc
    return record_from_dict(parsed)


def load_experiment_by_id(root: str | Path, experiment_id: str) -> ExperimentRecord:
    return load_experiment(experiment_path(root, experiment_id))


@dataclass(frozen=True)
class StoreListing:
    summaries: list[dict]
    warnings: list[dict]


def list_experiments(root: str | Path) -> StoreListing:
    """Summaries of every readable experiment, newest first; unreadable files
    become warning entries instead of failures."""
    root = Path(root)
    summaries: list[dict] = []
    warnings: list[dict] = []
    if not root.exists():
        return StoreListing(summaries=[], warnings=[])
    for path in sorted(root.glob("*.json")):
        try:
            record = load_experiment(path)
        except SchemaValidationError as exc:
            logger.warning("skipping unreadable experiment file %s: %s", path, exc.message)
            warnings.append({"path": str(path), "error": exc.message})
            continue
        summaries.append(
            {
                "experiment_id": record.experiment_id,
                "created_at": record.created_at,
                "dataset_summary": record.dataset_summary,
            }
        )
    summaries.sort(key=lambda s: (s["created_at"], s["experiment_id"]), reverse=True)
    return StoreListing(summaries=summaries, warnings=warnings)


def delete_experiment(root: str | Path, experiment_id: str) -> None:
    path = experiment_path(root, experiment_id)
    if not path.exists():
        raise ExperimentNotFound(f"no experiment {experiment_id} under {root}")
    path.unlink()
