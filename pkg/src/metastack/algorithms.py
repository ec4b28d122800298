"""Classifier registry: the fixed algorithm zoo behind base models and metamodels.

Eight algorithm families are exposed under stable string names. Hyperparameters
are passed straight through to the scikit-learn constructors, so valid names are
exactly the constructor keywords; anything else raises ``InvalidHyperparameter``
up front rather than at fit time.

Two conveniences applied at build time:
  - every estimator that accepts ``random_state`` gets the caller's seed unless
    the hyperparameters set one explicitly;
  - ``hidden_layer_sizes`` may be given as a plain int (JSON configs hold
    scalars only) and is widened to a 1-tuple.

Estimators without ``predict_proba`` are adapted by one-hot encoding their hard
label predictions, so every model yields a probability row summing to 1.
"""

from __future__ import annotations

import hashlib
import inspect
import json
from typing import Any

import numpy as np
from sklearn.ensemble import GradientBoostingClassifier, RandomForestClassifier
from sklearn.linear_model import LogisticRegression
from sklearn.naive_bayes import GaussianNB
from sklearn.neighbors import KNeighborsClassifier
from sklearn.neural_network import MLPClassifier
from sklearn.svm import SVC
from sklearn.tree import DecisionTreeClassifier

from .errors import InvalidHyperparameter, UnknownAlgorithm

# Enumeration order is the canonical algorithm order used for candidate sorting.
ALGORITHMS = (
    "logistic_regression",
    "k_nearest_neighbors",
    "decision_tree",
    "random_forest",
    "gradient_boosting",
    "naive_bayes",
    "multilayer_perceptron",
    "support_vector_machine",
)

_ESTIMATORS = {
    "logistic_regression": LogisticRegression,
    "k_nearest_neighbors": KNeighborsClassifier,
    "decision_tree": DecisionTreeClassifier,
    "random_forest": RandomForestClassifier,
    "gradient_boosting": GradientBoostingClassifier,
    "naive_bayes": GaussianNB,
    "multilayer_perceptron": MLPClassifier,
    "support_vector_machine": SVC,
}

# Two presets per algorithm; kept small so a full default grid stays desk-scale.
DEFAULT_PRESETS: dict[str, list[dict[str, Any]]] = {
    "logistic_regression": [{"C": 1.0, "max_iter": 2000}, {"C": 0.1, "max_iter": 2000}],
    "k_nearest_neighbors": [{"n_neighbors": 5}, {"n_neighbors": 3}],
    "decision_tree": [{"max_depth": 5}, {"min_samples_leaf": 3}],
    "random_forest": [{"n_estimators": 100}, {"n_estimators": 100, "max_depth": 4}],
    "gradient_boosting": [{"n_estimators": 100}, {"n_estimators": 50, "learning_rate": 0.05}],
    "naive_bayes": [{}, {"var_smoothing": 1e-8}],
    "multilayer_perceptron": [
        {"hidden_layer_sizes": 32, "max_iter": 1000},
        {"hidden_layer_sizes": 64, "alpha": 0.001, "max_iter": 1000},
    ],
    "support_vector_machine": [{"C": 1.0, "probability": True}, {"C": 10.0, "probability": True}],
}


def algorithm_index(algorithm: str) -> int:
    try:
        return ALGORITHMS.index(algorithm)
    except ValueError:
        raise UnknownAlgorithm(f"unknown algorithm {algorithm!r}; known: {', '.join(ALGORITHMS)}") from None


def allowed_hyperparameters(algorithm: str) -> frozenset[str]:
    cls = _ESTIMATORS.get(algorithm)
    if cls is None:
        raise UnknownAlgorithm(f"unknown algorithm {algorithm!r}; known: {', '.join(ALGORITHMS)}")
    params = inspect.signature(cls.__init__).parameters
    return frozenset(p for p in params if p != "self")


def validate_hyperparameters(algorithm: str, hyperparameters: dict[str, Any]) -> None:
    allowed = allowed_hyperparameters(algorithm)
    for name in hyperparameters:
        if name not in allowed:
            raise InvalidHyperparameter(algorithm, name)


def build_estimator(algorithm: str, hyperparameters: dict[str, Any], seed: int):
    """Construct an unfitted scikit-learn estimator for the given algorithm."""
    validate_hyperparameters(algorithm, hyperparameters)
    cls = _ESTIMATORS[algorithm]
    params = dict(hyperparameters)
    if "hidden_layer_sizes" in params and isinstance(params["hidden_layer_sizes"], int):
        params["hidden_layer_sizes"] = (params["hidden_layer_sizes"],)
    if "random_state" in allowed_hyperparameters(algorithm):
        params.setdefault("random_state", seed)
    return cls(**params)


def derive_seed(label: str, experiment_seed: int) -> int:
    """Stable per-model seed from (label, experiment seed); hashlib, not hash()."""
    digest = hashlib.sha256(f"{label}:{experiment_seed}".encode("utf-8")).digest()
    return int.from_bytes(digest[:4], "big")


def stable_digest(payload: Any, length: int = 10) -> str:
    """Short content digest of a JSON-serializable payload, stable across runs."""
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:length]


def predict_proba_dense(estimator, features: np.ndarray, n_classes: int) -> np.ndarray:
    """Class probabilities in dense class order 0..n_classes-1.

    Columns are placed by the estimator's ``classes_``; classes the estimator
    never saw get probability 0. Hard-label estimators (no ``predict_proba``)
    are one-hot encoded.
    """
    n_rows = features.shape[0]
    out = np.zeros((n_rows, n_classes), dtype=np.float64)
    if n_rows == 0:
        return out
    seen = np.asarray(estimator.classes_, dtype=np.int64)
    if hasattr(estimator, "predict_proba"):
        proba = np.asarray(estimator.predict_proba(features), dtype=np.float64)
        out[:, seen] = proba
    else:
        predicted = np.asarray(estimator.predict(features), dtype=np.int64)
        out[np.arange(n_rows), predicted] = 1.0
    return out
