"""Multi-metric validation suite, weighted ranking, and problematic instances.

Eight metrics per metamodel: accuracy, balanced accuracy, macro precision,
macro recall, macro F1, macro one-vs-rest ROC AUC, geometric mean of recalls,
and Matthews correlation. All are computed from scratch here (confusion-matrix
arithmetic plus a rank statistic for AUC); the test suite checks them against
an independent brute-force implementation.

Conventions, fixed once for all callers:
  - the class universe is ``proba.shape[1]``, not the classes observed;
  - macro precision/recall/F1 average over the full class universe with 0/0
    treated as 0;
  - balanced accuracy averages recall over classes present in ``y_true`` (its
    standard definition);
  - the geometric mean takes the n_classes-th root of the product of per-class
    recalls over the full universe, so a never-predicted class drives it to 0;
  - ROC AUC uses tie-averaged ranks (Mann-Whitney), macro-averaged over classes
    present in ``y_true``;
  - MCC uses the multiclass contingency formula, with a zero denominator
    mapping to 0 (chance level).

Degenerate truth (a single class in ``y_true``) leaves ROC AUC and MCC
undefined; they are reported as ``None``, never silently 0, and weighted
scoring renormalizes around them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from .errors import (
    AllWeightsZeroAfterExclusion,
    InvalidCriterion,
    InvalidMetricWeights,
    LengthMismatch,
    NoValidResults,
    UnknownMetric,
)

if TYPE_CHECKING:
    from .metamodels import MetamodelResult

METRIC_NAMES = (
    "accuracy",
    "balanced_accuracy",
    "precision_macro",
    "recall_macro",
    "f1_macro",
    "roc_auc",
    "geometric_mean",
    "mcc",
)

# Metrics that can be undefined (degenerate truth) and get excluded from scoring.
OPTIONAL_METRICS = frozenset({"roc_auc", "mcc"})

_ALIASES = {
    "acc": "accuracy",
    "bacc": "balanced_accuracy",
    "balanced": "balanced_accuracy",
    "precision": "precision_macro",
    "recall": "recall_macro",
    "f1": "f1_macro",
    "auc": "roc_auc",
    "roc": "roc_auc",
    "gmean": "geometric_mean",
    "gm": "geometric_mean",
}


@dataclass(frozen=True)
class MetricVector:
    """One metamodel's scores; ``roc_auc``/``mcc`` are None when undefined."""

    accuracy: float
    balanced_accuracy: float
    precision_macro: float
    recall_macro: float
    f1_macro: float
    roc_auc: float | None
    geometric_mean: float
    mcc: float | None

    def as_dict(self) -> dict[str, float | None]:
        return {name: getattr(self, name) for name in METRIC_NAMES}

    @classmethod
    def from_dict(cls, d: dict) -> "MetricVector":
        return cls(**{name: d[name] for name in METRIC_NAMES})

    def value_for_scoring(self, name: str) -> float | None:
        """Metric value mapped onto [0,1]; MCC shifts from [-1,1]."""
        value = getattr(self, name)
        if value is None:
            return None
        if name == "mcc":
            return (value + 1.0) / 2.0
        return float(value)


def resolve_metric_name(name: str) -> str:
    key = name.strip().lower()
    key = _ALIASES.get(key, key)
    if key not in METRIC_NAMES:
        raise UnknownMetric(f"unknown metric {name!r}; known: {', '.join(METRIC_NAMES)}")
    return key


@dataclass(frozen=True)
class MetricWeights:
    """Non-negative analyst priorities per metric; normalized at use time."""

    weights: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        cleaned: dict[str, float] = {}
        for name, value in self.weights.items():
            canonical = resolve_metric_name(name)
            weight = float(value)
            if not math.isfinite(weight) or weight < 0:
                raise InvalidMetricWeights(f"weight for {canonical!r} must be finite and >= 0, got {value!r}")
            cleaned[canonical] = cleaned.get(canonical, 0.0) + weight
        object.__setattr__(self, "weights", cleaned)

    @classmethod
    def uniform(cls) -> "MetricWeights":
        return cls({name: 1.0 for name in METRIC_NAMES})

    @classmethod
    def parse(cls, text: str) -> "MetricWeights":
        """Parse ``"accuracy:0.5,mcc:0.5"``; short aliases like ``acc`` resolve."""
        weights: dict[str, float] = {}
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if ":" not in part:
                raise InvalidMetricWeights(f"expected metric:weight, got {part!r}")
            name, _, raw = part.partition(":")
            try:
                value = float(raw)
            except ValueError:
                raise InvalidMetricWeights(f"weight for {name!r} is not a number: {raw!r}") from None
            canonical = resolve_metric_name(name)
            weights[canonical] = weights.get(canonical, 0.0) + value
        if not weights:
            raise InvalidMetricWeights(f"no metric:weight pairs in {text!r}")
        return cls(weights)

    def weight(self, name: str) -> float:
        return self.weights.get(name, 0.0)

    def normalized(self) -> dict[str, float]:
        """Positive weights scaled to sum 1; the scale-free form."""
        total = sum(w for w in self.weights.values() if w > 0)
        if total <= 0:
            raise InvalidMetricWeights("at least one metric weight must be positive")
        return {name: w / total for name, w in self.weights.items() if w > 0}

    def as_dict(self) -> dict[str, float]:
        return dict(self.weights)


@dataclass(frozen=True)
class ProblematicCriterion:
    """An instance is problematic when misclassified by at least
    ``min_fraction_wrong`` of the metamodels, or when the mean max-class
    probability across metamodels stays at or below ``confidence_ceiling``."""

    min_fraction_wrong: float = 0.5
    confidence_ceiling: float = 0.55

    def __post_init__(self):
        for name in ("min_fraction_wrong", "confidence_ceiling"):
            value = getattr(self, name)
            if not (0.0 < value <= 1.0):
                raise InvalidCriterion(f"{name} must lie in (0, 1], got {value!r}")

    def as_dict(self) -> dict[str, float]:
        return {
            "min_fraction_wrong": self.min_fraction_wrong,
            "confidence_ceiling": self.confidence_ceiling,
        }


@dataclass(frozen=True)
class ProblematicSet:
    instance_ids: list[str]
    criterion: ProblematicCriterion


def _as_int_seq(values):
    """Plain sequence of ints; ndarray converts, lists/tuples pass through (read-only)."""
    if hasattr(values, "tolist"):
        return values.tolist()
    if isinstance(values, (list, tuple)):
        return values
    return [int(v) for v in values]


def _as_row_seqs(proba):
    if hasattr(proba, "tolist"):
        return proba.tolist()
    if isinstance(proba, (list, tuple)):
        return proba
    return [list(row) for row in proba]


def _rank_sum_auc(scores: list[float], y_true: list[int], c: int, n_pos: int, n: int) -> float:
    """One-vs-rest AUC for class c via the Mann-Whitney rank sum, ties averaged."""
    order = sorted(range(n), key=scores.__getitem__)
    rank_sum = 0.0
    i = 0
    while i < n:
        j = i
        value = scores[order[i]]
        pos_in_group = 0
        while j < n and scores[order[j]] == value:
            if y_true[order[j]] == c:
                pos_in_group += 1
            j += 1
        rank_sum += pos_in_group * (i + j + 1) / 2.0  # mean 1-based rank of the tie group
        i = j
    return (rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * (n - n_pos))


def compute_metrics(y_true, y_pred, proba) -> MetricVector:
    """Score predictions against truth; see module docstring for conventions.

    Internals are scalar arithmetic over confusion counts rather than array
    ops: the exhaustive equivalence suite calls this on 6-row inputs hundreds
    of thousands of times, where per-call array overhead would dominate.
    """
    yt = _as_int_seq(y_true)
    yp = _as_int_seq(y_pred)
    rows = _as_row_seqs(proba)
    n = len(yt)
    if len(yp) != n or len(rows) != n:
        raise LengthMismatch(f"y_true has {n} entries, y_pred {len(yp)}, proba {len(rows)} rows")
    if n == 0:
        raise LengthMismatch("cannot score zero instances")
    n_classes = len(rows[0])
    if n_classes < 2:
        raise ValueError("proba must have at least 2 class columns")
    for row in rows:
        if abs(sum(row) - 1.0) > 1e-9:
            raise ValueError("probability rows must sum to 1 within 1e-9")

    confusion = [0] * (n_classes * n_classes)
    for t, p in zip(yt, yp):
        if not (0 <= t < n_classes and 0 <= p < n_classes):
            raise ValueError(f"label ({t}, {p}) outside class range [0, {n_classes})")
        confusion[t * n_classes + p] += 1
    diagonal = [confusion[c * n_classes + c] for c in range(n_classes)]
    true_counts = [sum(confusion[c * n_classes : (c + 1) * n_classes]) for c in range(n_classes)]
    pred_counts = [sum(confusion[c::n_classes]) for c in range(n_classes)]

    recall = [diagonal[c] / true_counts[c] if true_counts[c] else 0.0 for c in range(n_classes)]
    precision = [diagonal[c] / pred_counts[c] if pred_counts[c] else 0.0 for c in range(n_classes)]
    f1 = [
        2.0 * precision[c] * recall[c] / (precision[c] + recall[c])
        if precision[c] + recall[c] > 0
        else 0.0
        for c in range(n_classes)
    ]

    present = [c for c in range(n_classes) if true_counts[c] > 0]
    accuracy = sum(diagonal) / n
    balanced_accuracy = sum(recall[c] for c in present) / len(present)
    precision_macro = sum(precision) / n_classes
    recall_macro = sum(recall) / n_classes
    f1_macro = sum(f1) / n_classes
    geometric_mean = math.prod(recall) ** (1.0 / n_classes)

    degenerate_truth = len(present) < 2

    roc_auc: float | None
    if degenerate_truth:
        roc_auc = None
    else:
        auc_total = 0.0
        for c in present:
            scores = [row[c] for row in rows]
            auc_total += _rank_sum_auc(scores, yt, c, true_counts[c], n)
        roc_auc = auc_total / len(present)

    mcc: float | None
    if degenerate_truth:
        mcc = None
    else:
        # All terms are exact integers, so sqrt of the single product keeps
        # perfect predictions at exactly 1.0.
        s = n
        numerator = sum(diagonal) * s - sum(p * t for p, t in zip(pred_counts, true_counts))
        squared = (s * s - sum(p * p for p in pred_counts)) * (s * s - sum(t * t for t in true_counts))
        mcc = numerator / math.sqrt(squared) if squared > 0 else 0.0

    return MetricVector(
        accuracy=accuracy,
        balanced_accuracy=balanced_accuracy,
        precision_macro=precision_macro,
        recall_macro=recall_macro,
        f1_macro=f1_macro,
        roc_auc=roc_auc,
        geometric_mean=geometric_mean,
        mcc=mcc,
    )


def weighted_score(m: MetricVector, w: MetricWeights) -> float:
    """Convex combination of defined metrics under renormalized weights.

    MCC enters as (mcc+1)/2 so every term shares [0,1]. Weights pointing at
    undefined metrics are dropped before renormalization. Weights are scaled
    to sum 1 before use, so rescaling every weight leaves scores unchanged,
    not just the ordering.
    """
    normalized = w.normalized()
    terms: list[tuple[float, float]] = []
    total = 0.0
    for name in METRIC_NAMES:
        weight = normalized.get(name, 0.0)
        if weight <= 0.0:
            continue
        value = m.value_for_scoring(name)
        if value is None:
            continue
        terms.append((weight, value))
        total += weight
    if total <= 0.0:
        raise AllWeightsZeroAfterExclusion(
            "no positive weight remains after excluding undefined metrics"
        )
    return float(sum(weight * value for weight, value in terms) / total)


def rank_candidates(
    results: list["MetamodelResult"], w: MetricWeights
) -> list[tuple[str, float]]:
    """Candidates ordered by descending weighted score, ties by ascending id."""
    if not results:
        raise NoValidResults("no successfully evaluated candidates to rank")
    scored = [(r.candidate.candidate_id, weighted_score(r.metrics, w)) for r in results]
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    return scored


def instance_stats(results: list["MetamodelResult"]) -> tuple[np.ndarray, np.ndarray]:
    """Per instance: fraction of metamodels wrong, mean max-class probability."""
    if not results:
        raise NoValidResults("no results to analyze")
    correct = np.stack([np.asarray(r.correct, dtype=bool) for r in results])
    max_proba = np.stack([np.asarray(r.oof_probabilities).max(axis=1) for r in results])
    fraction_wrong = 1.0 - correct.mean(axis=0)
    mean_confidence = max_proba.mean(axis=0)
    return fraction_wrong, mean_confidence


def find_problematic(
    results: list["MetamodelResult"],
    criterion: ProblematicCriterion | None = None,
    instance_ids: list[str] | None = None,
) -> ProblematicSet:
    """Instances failing the criterion, sorted by fraction-wrong descending.

    ``instance_ids`` supplies the identifiers to report; positional indices are
    used when omitted. Ties keep dataset order.
    """
    criterion = criterion or ProblematicCriterion()
    fraction_wrong, mean_confidence = instance_stats(results)
    n = len(fraction_wrong)
    if instance_ids is None:
        instance_ids = [str(i) for i in range(n)]
    if len(instance_ids) != n:
        raise LengthMismatch(f"{len(instance_ids)} instance ids for {n} instances")
    flagged = [
        i
        for i in range(n)
        if fraction_wrong[i] >= criterion.min_fraction_wrong
        or mean_confidence[i] <= criterion.confidence_ceiling
    ]
    flagged.sort(key=lambda i: (-fraction_wrong[i], i))
    return ProblematicSet(instance_ids=[instance_ids[i] for i in flagged], criterion=criterion)
