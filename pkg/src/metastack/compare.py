"""Head-to-head comparison of two metamodels on the same instances.

The agreement table partitions all instances into both-correct / only-a /
only-b / both-wrong; the per-instance list carries each model's prediction and
max-class confidence plus their signed delta (a minus b), sorted by |delta|
descending so the strongest disagreements surface first. Swapping a and b
exchanges the only_* counts and negates every delta.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InstanceMismatch
from .metamodels import MetamodelResult
from .metrics import METRIC_NAMES


@dataclass(frozen=True)
class AgreementCounts:
    both_correct: int
    only_a: int
    only_b: int
    both_wrong: int

    def total(self) -> int:
        return self.both_correct + self.only_a + self.only_b + self.both_wrong

    def as_dict(self) -> dict[str, int]:
        return {
            "both_correct": self.both_correct,
            "only_a": self.only_a,
            "only_b": self.only_b,
            "both_wrong": self.both_wrong,
        }


@dataclass(frozen=True)
class PairInstance:
    instance_id: str
    label: int
    pred_a: int
    pred_b: int
    maxproba_a: float
    maxproba_b: float
    delta: float

    def as_dict(self) -> dict:
        return {
            "instance_id": self.instance_id,
            "label": self.label,
            "pred_a": self.pred_a,
            "pred_b": self.pred_b,
            "maxproba_a": self.maxproba_a,
            "maxproba_b": self.maxproba_b,
            "delta": self.delta,
        }


@dataclass(frozen=True)
class PairComparison:
    candidate_a: str
    candidate_b: str
    agreement: AgreementCounts
    per_instance: list[PairInstance]
    metric_delta: dict[str, float | None]

    def as_dict(self) -> dict:
        return {
            "candidate_a": self.candidate_a,
            "candidate_b": self.candidate_b,
            "agreement": self.agreement.as_dict(),
            "per_instance": [e.as_dict() for e in self.per_instance],
            "metric_delta": dict(self.metric_delta),
        }


def compare_pair(
    a: MetamodelResult,
    b: MetamodelResult,
    labels: np.ndarray,
    instance_ids: list[str] | None = None,
) -> PairComparison:
    """Agreement structure, confidence deltas, and metric deltas for (a, b)."""
    labels = np.asarray(labels, dtype=np.int64)
    n = len(labels)
    if len(a.predicted_labels) != n or len(b.predicted_labels) != n:
        raise InstanceMismatch(
            f"results cover {len(a.predicted_labels)} and {len(b.predicted_labels)} instances, labels {n}"
        )
    if instance_ids is None:
        instance_ids = [str(i) for i in range(n)]
    if len(instance_ids) != n:
        raise InstanceMismatch(f"{len(instance_ids)} instance ids for {n} instances")

    correct_a = np.asarray(a.correct, dtype=bool)
    correct_b = np.asarray(b.correct, dtype=bool)
    agreement = AgreementCounts(
        both_correct=int(np.sum(correct_a & correct_b)),
        only_a=int(np.sum(correct_a & ~correct_b)),
        only_b=int(np.sum(~correct_a & correct_b)),
        both_wrong=int(np.sum(~correct_a & ~correct_b)),
    )

    max_a = np.asarray(a.oof_probabilities).max(axis=1)
    max_b = np.asarray(b.oof_probabilities).max(axis=1)
    entries = [
        PairInstance(
            instance_id=instance_ids[i],
            label=int(labels[i]),
            pred_a=int(a.predicted_labels[i]),
            pred_b=int(b.predicted_labels[i]),
            maxproba_a=float(max_a[i]),
            maxproba_b=float(max_b[i]),
            delta=float(max_a[i] - max_b[i]),
        )
        for i in range(n)
    ]
    entries.sort(key=lambda e: (-abs(e.delta), e.instance_id))

    metric_delta: dict[str, float | None] = {}
    metrics_a, metrics_b = a.metrics.as_dict(), b.metrics.as_dict()
    for name in METRIC_NAMES:
        va, vb = metrics_a[name], metrics_b[name]
        metric_delta[name] = None if va is None or vb is None else va - vb

    return PairComparison(
        candidate_a=a.candidate.candidate_id,
        candidate_b=b.candidate.candidate_id,
        agreement=agreement,
        per_instance=entries,
        metric_delta=metric_delta,
    )


def disagreement_instances(pc: PairComparison) -> list[str]:
    """Instances where the two metamodels predict different classes."""
    return [e.instance_id for e in pc.per_instance if e.pred_a != e.pred_b]
