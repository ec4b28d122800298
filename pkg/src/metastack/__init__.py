"""metastack: build stacking ensembles, score alternative metamodels, compare them."""

from .compare import PairComparison, compare_pair, disagreement_instances
from .config import ExperimentConfig, config_from_dict, config_from_json
from .dataset import Dataset, FoldAssignment, IngestOptions, load_dataset, stratified_kfold
from .ensemble import BaseLayer, BaseModelSpec, MetaFeatureMatrix, base_predict, train_base_layer
from .metamodels import (
    MetamodelCandidate,
    MetamodelResult,
    enumerate_candidates,
    evaluate_candidate,
    run_experiment,
    run_from_config,
)
from .metrics import (
    METRIC_NAMES,
    MetricVector,
    MetricWeights,
    ProblematicCriterion,
    ProblematicSet,
    compute_metrics,
    find_problematic,
    rank_candidates,
    weighted_score,
)
from .store import (
    ExperimentRecord,
    list_experiments,
    load_experiment,
    load_experiment_by_id,
    save_experiment,
)

__all__ = [
    "BaseLayer",
    "BaseModelSpec",
    "Dataset",
    "ExperimentConfig",
    "ExperimentRecord",
    "FoldAssignment",
    "IngestOptions",
    "METRIC_NAMES",
    "MetaFeatureMatrix",
    "MetamodelCandidate",
    "MetamodelResult",
    "MetricVector",
    "MetricWeights",
    "PairComparison",
    "ProblematicCriterion",
    "ProblematicSet",
    "base_predict",
    "compare_pair",
    "compute_metrics",
    "config_from_dict",
    "config_from_json",
    "disagreement_instances",
    "enumerate_candidates",
    "evaluate_candidate",
    "find_problematic",
    "list_experiments",
    "load_dataset",
    "load_experiment",
    "load_experiment_by_id",
    "rank_candidates",
    "run_experiment",
    "run_from_config",
    "save_experiment",
    "stratified_kfold",
    "train_base_layer",
    "weighted_score",
]

__version__ = "0.1.0"
