"""Payload builders shared by the HTTP API and the CLI.

Both surfaces serialize through :func:`dump_json` (sorted keys, compact
separators, repr-precision floats), so the CLI's ``--format json`` output is
byte-identical to the corresponding API response body.
"""

from __future__ import annotations

import json

import numpy as np

from .compare import compare_pair, disagreement_instances
from .errors import UnknownCandidate
from .metrics import (
    MetricWeights,
    ProblematicCriterion,
    find_problematic,
    instance_stats,
    rank_candidates,
    weighted_score,
)
from .store import ExperimentRecord, StoreListing, record_to_dict


def dump_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), allow_nan=False)


def dump_json_bytes(payload) -> bytes:
    return dump_json(payload).encode("utf-8")


def experiment_payload(record: ExperimentRecord) -> dict:
    return record_to_dict(record)


def listing_payload(listing: StoreListing) -> list[dict]:
    return listing.summaries


def weights_for(record: ExperimentRecord, weights_text: str | None) -> MetricWeights:
    """Parse query/CLI weights, falling back to the experiment's configured ones."""
    if weights_text:
        return MetricWeights.parse(weights_text)
    configured = record.config.get("metric_weights") or {}
    return MetricWeights(configured) if configured else MetricWeights.uniform()


def ranking_payload(record: ExperimentRecord, weights: MetricWeights) -> dict:
    ranking = rank_candidates(record.results, weights)
    by_id = {r.candidate.candidate_id: r for r in record.results}
    entries = []
    for candidate_id, score in ranking:
        result = by_id[candidate_id]
        entries.append(
            {
                "candidate_id": candidate_id,
                "algorithm": result.candidate.algorithm,
                "score": score,
                "metrics": result.metrics.as_dict(),
            }
        )
    return {
        "experiment_id": record.experiment_id,
        "weights": weights.normalized(),
        "ranking": entries,
        "failures": list(record.failures),
    }


def instances_payload(
    record: ExperimentRecord,
    problematic: bool = False,
    criterion: ProblematicCriterion | None = None,
) -> dict:
    """Per-instance table: truth, difficulty stats, and every metamodel's view."""
    criterion = criterion or ProblematicCriterion()
    labels = np.asarray(record.labels, dtype=np.int64)
    class_names = record.dataset_summary["class_names"]
    fraction_wrong, mean_confidence = instance_stats(record.results)
    flagged = set(
        find_problematic(record.results, criterion, instance_ids=record.instance_ids).instance_ids
    )

    order = list(range(len(labels)))
    if problematic:
        order = [i for i in order if record.instance_ids[i] in flagged]
        order.sort(key=lambda i: (-fraction_wrong[i], i))

    rows = []
    for i in order:
        per_candidate = []
        for result in record.results:
            predicted = int(result.predicted_labels[i])
            proba_row = [float(v) for v in result.oof_probabilities[i]]
            per_candidate.append(
                {
                    "candidate_id": result.candidate.candidate_id,
                    "predicted_label": predicted,
                    "predicted_class": class_names[predicted],
                    "correct": bool(result.correct[i]),
                    "max_probability": max(proba_row),
                    "probabilities": proba_row,
                }
            )
        rows.append(
            {
                "instance_id": record.instance_ids[i],
                "true_label": int(labels[i]),
                "true_class": class_names[int(labels[i])],
                "fraction_wrong": float(fraction_wrong[i]),
                "mean_max_probability": float(mean_confidence[i]),
                "problematic": record.instance_ids[i] in flagged,
                "per_candidate": per_candidate,
            }
        )
    return {
        "experiment_id": record.experiment_id,
        "criterion": criterion.as_dict(),
        "problematic_only": problematic,
        "instances": rows,
    }


def problematic_payload(record: ExperimentRecord, criterion: ProblematicCriterion | None = None) -> dict:
    """Condensed problematic-instance listing for the CLI."""
    criterion = criterion or ProblematicCriterion()
    fraction_wrong, mean_confidence = instance_stats(record.results)
    index_of = {iid: i for i, iid in enumerate(record.instance_ids)}
    problem = find_problematic(record.results, criterion, instance_ids=record.instance_ids)
    entries = []
    for iid in problem.instance_ids:
        i = index_of[iid]
        entries.append(
            {
                "instance_id": iid,
                "fraction_wrong": float(fraction_wrong[i]),
                "mean_max_probability": float(mean_confidence[i]),
            }
        )
    return {
        "experiment_id": record.experiment_id,
        "criterion": criterion.as_dict(),
        "problematic": entries,
    }


def compare_payload(record: ExperimentRecord, candidate_a: str, candidate_b: str) -> dict:
    result_a = record.result_for(candidate_a)
    result_b = record.result_for(candidate_b)
    if result_a is None:
        raise UnknownCandidate(f"no evaluated candidate {candidate_a!r} in experiment")
    if result_b is None:
        raise UnknownCandidate(f"no evaluated candidate {candidate_b!r} in experiment")
    labels = np.asarray(record.labels, dtype=np.int64)
    pc = compare_pair(result_a, result_b, labels, instance_ids=record.instance_ids)
    payload = pc.as_dict()
    payload["experiment_id"] = record.experiment_id
    payload["disagreements"] = disagreement_instances(pc)
    return payload


def scores_summary(record: ExperimentRecord, weights: MetricWeights) -> dict[str, float]:
    return {
        r.candidate.candidate_id: weighted_score(r.metrics, weights) for r in record.results
    }
