"""Experiment configuration: the JSON document shared by the CLI and the API.

See docs/schema.md for the field-by-field description. ``from_dict`` validates
eagerly and raises ``ConfigError`` with a machine code (``missing_target``,
``bad_k``, ...) so the API can answer 422 with a precise reason.

The experiment id is the content hash of the fully-resolved config (defaults
materialized), so the same logical experiment gets the same id on any machine.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

from .algorithms import ALGORITHMS, DEFAULT_PRESETS, derive_seed, validate_hyperparameters
from .dataset import DEFAULT_K, DEFAULT_SEED, IngestOptions
from .ensemble import BaseModelSpec
from .errors import ConfigError, InvalidHyperparameter, UnknownAlgorithm
from .metrics import MetricWeights


def default_base_specs(seed: int) -> list[BaseModelSpec]:
    """One base model per algorithm, first preset, seeds derived per model id."""
    specs = []
    for algorithm in ALGORITHMS:
        model_id = f"base_{algorithm}"
        specs.append(
            BaseModelSpec(
                model_id=model_id,
                algorithm=algorithm,
                hyperparameters=dict(DEFAULT_PRESETS[algorithm][0]),
                seed=derive_seed(model_id, seed),
            )
        )
    return specs


def default_metamodel_grid() -> dict[str, list[dict[str, Any]]]:
    """All 8 algorithms x 2 presets = 16 candidates."""
    return {algorithm: [dict(p) for p in DEFAULT_PRESETS[algorithm]] for algorithm in ALGORITHMS}


@dataclass(frozen=True)
class ExperimentConfig:
    target_column: str
    dataset: str | None = None
    dataset_inline: str | None = None
    name: str | None = None
    delimiter: str = ","
    id_column: str | None = None
    k: int = DEFAULT_K
    seed: int = DEFAULT_SEED
    include_raw_features: bool = False
    base_specs: list[BaseModelSpec] = field(default_factory=list)
    metamodel_grid: dict[str, list[dict[str, Any]]] = field(default_factory=dict)
    metric_weights: dict[str, float] = field(default_factory=dict)

    def resolved_base_specs(self) -> list[BaseModelSpec]:
        return list(self.base_specs) if self.base_specs else default_base_specs(self.seed)

    def resolved_grid(self) -> dict[str, list[dict[str, Any]]]:
        return dict(self.metamodel_grid) if self.metamodel_grid else default_metamodel_grid()

    def resolved_weights(self) -> MetricWeights:
        if self.metric_weights:
            return MetricWeights(dict(self.metric_weights))
        return MetricWeights.uniform()

    def ingest_options(self) -> IngestOptions:
        return IngestOptions(delimiter=self.delimiter, id_column=self.id_column, name=self.name)

    def canonical_dict(self) -> dict:
        """Fully resolved config as plain JSON data; the hash input for the id."""
        return {
            "target_column": self.target_column,
            "dataset": self.dataset,
            "dataset_inline": self.dataset_inline,
            "name": self.name,
            "delimiter": self.delimiter,
            "id_column": self.id_column,
            "k": self.k,
            "seed": self.seed,
            "include_raw_features": self.include_raw_features,
            "base_specs": [spec.as_dict() for spec in self.resolved_base_specs()],
            "metamodel_grid": self.resolved_grid(),
            "metric_weights": self.resolved_weights().as_dict(),
        }

    def experiment_id(self) -> str:
        text = json.dumps(self.canonical_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def _require(d: dict, key: str, kind: type, code: str) -> Any:
    if key not in d:
        raise ConfigError(code, f"config is missing required field {key!r}")
    value = d[key]
    if not isinstance(value, kind):
        raise ConfigError(code, f"config field {key!r} must be {kind.__name__}, got {type(value).__name__}")
    return value


def config_from_dict(d: dict) -> ExperimentConfig:
    """Validate a parsed JSON document into an ExperimentConfig."""
    if not isinstance(d, dict):
        raise ConfigError("bad_config", "experiment config must be a JSON object")

    target_column = _require(d, "target_column", str, "missing_target")
    dataset = d.get("dataset")
    dataset_inline = d.get("dataset_inline")
    if dataset is None and dataset_inline is None:
        raise ConfigError("missing_dataset", "config needs 'dataset' (path) or 'dataset_inline' (CSV text)")
    if dataset is not None and not isinstance(dataset, str):
        raise ConfigError("bad_dataset", "'dataset' must be a path string")
    if dataset_inline is not None and not isinstance(dataset_inline, str):
        raise ConfigError("bad_dataset", "'dataset_inline' must be CSV text")

    k = d.get("k", DEFAULT_K)
    if not isinstance(k, int) or isinstance(k, bool) or k < 2:
        raise ConfigError("bad_k", f"'k' must be an integer >= 2, got {k!r}")
    seed = d.get("seed", DEFAULT_SEED)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ConfigError("bad_seed", f"'seed' must be an integer, got {seed!r}")

    base_specs = []
    for i, raw in enumerate(d.get("base_specs", [])):
        if not isinstance(raw, dict):
            raise ConfigError("bad_base_spec", f"base_specs[{i}] must be an object")
        try:
            algorithm = _require(raw, "algorithm", str, "bad_base_spec")
            hyperparameters = raw.get("hyperparameters", {})
            if not isinstance(hyperparameters, dict):
                raise ConfigError("bad_base_spec", f"base_specs[{i}].hyperparameters must be an object")
            validate_hyperparameters(algorithm, hyperparameters)
        except (UnknownAlgorithm, InvalidHyperparameter) as exc:
            raise ConfigError("bad_base_spec", f"base_specs[{i}]: {exc.message}") from exc
        model_id = raw.get("model_id") or f"base_{algorithm}_{i}"
        spec_seed = raw.get("seed")
        if spec_seed is None:
            spec_seed = derive_seed(model_id, seed)
        base_specs.append(
            BaseModelSpec(
                model_id=model_id,
                algorithm=algorithm,
                hyperparameters=hyperparameters,
                seed=spec_seed,
            )
        )
    ids = [s.model_id for s in base_specs]
    if len(set(ids)) != len(ids):
        raise ConfigError("bad_base_spec", f"duplicate base model ids: {ids}")

    grid = d.get("metamodel_grid", {})
    if not isinstance(grid, dict):
        raise ConfigError("bad_grid", "'metamodel_grid' must map algorithm -> list of hyperparameter objects")
    for algorithm, presets in grid.items():
        if algorithm not in ALGORITHMS:
            raise ConfigError("bad_grid", f"unknown algorithm {algorithm!r} in metamodel_grid")
        if not isinstance(presets, list) or not all(isinstance(p, dict) for p in presets):
            raise ConfigError("bad_grid", f"metamodel_grid[{algorithm!r}] must be a list of objects")
        for p in presets:
            try:
                validate_hyperparameters(algorithm, p)
            except InvalidHyperparameter as exc:
                raise ConfigError("bad_grid", exc.message) from exc

    metric_weights = d.get("metric_weights", {})
    if not isinstance(metric_weights, dict):
        raise ConfigError("bad_weights", "'metric_weights' must map metric -> weight")
    if metric_weights:
        try:
            metric_weights = MetricWeights(metric_weights).as_dict()
        except Exception as exc:
            raise ConfigError("bad_weights", str(exc)) from exc

    delimiter = d.get("delimiter", ",")
    if not isinstance(delimiter, str) or len(delimiter) != 1:
        raise ConfigError("bad_delimiter", f"'delimiter' must be a single character, got {delimiter!r}")

    return ExperimentConfig(
        target_column=target_column,
        dataset=dataset,
        dataset_inline=dataset_inline,
        name=d.get("name"),
        delimiter=delimiter,
        id_column=d.get("id_column"),
        k=k,
        seed=seed,
        include_raw_features=bool(d.get("include_raw_features", False)),
        base_specs=base_specs,
        metamodel_grid=grid,
        metric_weights=metric_weights,
    )


def config_from_json(text: str) -> ExperimentConfig:
    try:
        parsed = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("malformed_json", f"config is not valid JSON: {exc}") from exc
    return config_from_dict(parsed)
