// Shared mock payloads; shapes mirror docs/schemas on the server side.

import { ComparePayload, InstancesPayload, Metrics, RankingPayload } from "../src/types.js";

export function metrics(value: number, mcc: number | null = 0.5): Metrics {
  return {
    accuracy: value,
    balanced_accuracy: value,
    precision_macro: value,
    recall_macro: value,
    f1_macro: value,
    roc_auc: value,
    geometric_mean: value,
    mcc,
  };
}

export function rankingPayload(): RankingPayload {
  return {
    experiment_id: "abc123",
    weights: { accuracy: 1 },
    ranking: [
      { candidate_id: "tree-x", algorithm: "decision_tree", score: 0.93, metrics: metrics(0.93) },
      { candidate_id: "knn-y", algorithm: "k_nearest_neighbors", score: 0.88, metrics: metrics(0.88) },
      { candidate_id: "lr-z", algorithm: "logistic_regression", score: 0.71, metrics: metrics(0.71, null) },
    ],
    failures: [{ candidate_id: "mlp-broken", message: "did not converge" }],
  };
}

export function instancesPayload(): InstancesPayload {
  return {
    experiment_id: "abc123",
    criterion: { min_fraction_wrong: 0.5, confidence_ceiling: 0.55 },
    problematic_only: false,
    instances: [
      {
        instance_id: "r00",
        true_label: 0,
        true_class: "neg",
        fraction_wrong: 1.0,
        mean_max_probability: 0.52,
        problematic: true,
        per_candidate: [
          { candidate_id: "tree-x", predicted_label: 1, predicted_class: "pos",
            correct: false, max_probability: 0.6, probabilities: [0.4, 0.6] },
          { candidate_id: "knn-y", predicted_label: 1, predicted_class: "pos",
            correct: false, max_probability: 0.44, probabilities: [0.56, 0.44] },
        ],
      },
      {
        instance_id: "r01",
        true_label: 1,
        true_class: "pos",
        fraction_wrong: 0.0,
        mean_max_probability: 0.97,
        problematic: false,
        per_candidate: [
          { candidate_id: "tree-x", predicted_label: 1, predicted_class: "pos",
            correct: true, max_probability: 0.98, probabilities: [0.02, 0.98] },
          { candidate_id: "knn-y", predicted_label: 1, predicted_class: "pos",
            correct: true, max_probability: 0.96, probabilities: [0.04, 0.96] },
        ],
      },
      {
        instance_id: "r02",
        true_label: 0,
        true_class: "neg",
        fraction_wrong: 0.5,
        mean_max_probability: 0.61,
        problematic: true,
        per_candidate: [
          { candidate_id: "tree-x", predicted_label: 0, predicted_class: "neg",
            correct: true, max_probability: 0.7, probabilities: [0.7, 0.3] },
          { candidate_id: "knn-y", predicted_label: 1, predicted_class: "pos",
            correct: false, max_probability: 0.52, probabilities: [0.48, 0.52] },
        ],
      },
    ],
  };
}

export function comparePayload(): ComparePayload {
  return {
    experiment_id: "abc123",
    candidate_a: "tree-x",
    candidate_b: "knn-y",
    agreement: { both_correct: 5, only_a: 3, only_b: 2, both_wrong: 1 },
    per_instance: [
      { instance_id: "r04", label: 1, pred_a: 1, pred_b: 0,
        maxproba_a: 0.9, maxproba_b: 0.6, delta: 0.3 },
      { instance_id: "r02", label: 0, pred_a: 1, pred_b: 1,
        maxproba_a: 0.55, maxproba_b: 0.75, delta: -0.2 },
      { instance_id: "r01", label: 1, pred_a: 1, pred_b: 1,
        maxproba_a: 0.8, maxproba_b: 0.8, delta: 0.0 },
    ],
    metric_delta: { accuracy: 0.1, mcc: null },
    disagreements: ["r04"],
  };
}

/** What the server would return for compare(b, a): counts swapped, deltas negated. */
export function mirroredComparePayload(): ComparePayload {
  const forward = comparePayload();
  return {
    ...forward,
    candidate_a: forward.candidate_b,
    candidate_b: forward.candidate_a,
    agreement: {
      both_correct: forward.agreement.both_correct,
      only_a: forward.agreement.only_b,
      only_b: forward.agreement.only_a,
      both_wrong: forward.agreement.both_wrong,
    },
    per_instance: forward.per_instance.map((entry) => ({
      ...entry,
      pred_a: entry.pred_b,
      pred_b: entry.pred_a,
      maxproba_a: entry.maxproba_b,
      maxproba_b: entry.maxproba_a,
      delta: -entry.delta,
    })),
    metric_delta: { accuracy: -0.1, mcc: null },
  };
}
