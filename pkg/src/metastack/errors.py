"""Exception taxonomy shared across the package.

Every error carries a short machine-readable ``code`` so the HTTP layer and
the CLI can map failures to status/exit codes without string matching.
"""

from __future__ import annotations


class MetastackError(Exception):
    """Base class for all package errors."""

    code = "error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


# --- dataset ---------------------------------------------------------------

class MissingTargetColumn(MetastackError):
    code = "missing_target"


class SingleClassDataset(MetastackError):
    code = "single_class_dataset"


class EmptyDataset(MetastackError):
    code = "empty_dataset"


class InvalidDataset(MetastackError):
    code = "invalid_dataset"


class KTooSmall(MetastackError):
    code = "k_too_small"


class KTooLarge(MetastackError):
    code = "k_too_large"


# --- model training ----------------------------------------------------------

class UnknownAlgorithm(MetastackError):
    code = "unknown_algorithm"


class InvalidHyperparameter(MetastackError):
    code = "invalid_hyperparameter"

    def __init__(self, algorithm: str, name: str):
        super().__init__(f"algorithm {algorithm!r} accepts no hyperparameter {name!r}")
        self.algorithm = algorithm
        self.name = name


class ModelTrainingFailure(MetastackError):
    code = "model_training_failure"

    def __init__(self, model_id: str, cause: BaseException | str):
        super().__init__(f"training failed for {model_id!r}: {cause}")
        self.model_id = model_id
        self.cause = cause


class ShapeMismatch(MetastackError):
    code = "shape_mismatch"


class EmptyGrid(MetastackError):
    code = "empty_grid"


# --- metrics / ranking -------------------------------------------------------

class LengthMismatch(MetastackError):
    code = "length_mismatch"


class UnknownMetric(MetastackError):
    code = "unknown_metric"


class InvalidMetricWeights(MetastackError):
    code = "invalid_weights"


class AllWeightsZeroAfterExclusion(MetastackError):
    code = "all_weights_zero_after_exclusion"


class NoValidResults(MetastackError):
    code = "no_valid_results"


class InvalidCriterion(MetastackError):
    code = "invalid_criterion"


# --- comparison --------------------------------------------------------------

class InstanceMismatch(MetastackError):
    code = "instance_mismatch"


class UnknownCandidate(MetastackError):
    code = "unknown_candidate"


# --- persistence -------------------------------------------------------------

class DuplicateExperiment(MetastackError):
    code = "duplicate_experiment"


class SchemaValidationError(MetastackError):
    code = "schema_validation_error"


class ExperimentNotFound(MetastackError):
    code = "not_found"


# --- config ------------------------------------------------------------------

class ConfigError(MetastackError):
    """Invalid experiment configuration; ``code`` names the offending part."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
