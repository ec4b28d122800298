// API payload shapes, mirroring docs/schemas/*.json on the server side.

export const METRIC_NAMES = [
  "accuracy",
  "balanced_accuracy",
  "precision_macro",
  "recall_macro",
  "f1_macro",
  "roc_auc",
  "geometric_mean",
  "mcc",
] as const;

export type MetricName = (typeof METRIC_NAMES)[number];

export type Metrics = Record<MetricName, number | null>;

export interface RankingEntry {
  candidate_id: string;
  algorithm: string;
  score: number;
  metrics: Metrics;
}

export interface Failure {
  candidate_id: string;
  message: string;
}

export interface RankingPayload {
  experiment_id: string;
  weights: Record<string, number>;
  ranking: RankingEntry[];
  failures: Failure[];
}

export interface ExperimentSummary {
  experiment_id: string;
  created_at: string;
  dataset_summary: {
    name: string;
    n_instances: number;
    n_features: number;
    class_names: string[];
  };
}

export interface PerCandidateCell {
  candidate_id: string;
  predicted_label: number;
  predicted_class: string;
  correct: boolean;
  max_probability: number;
  probabilities: number[];
}

export interface InstanceRow {
  instance_id: string;
  true_label: number;
  true_class: string;
  fraction_wrong: number;
  mean_max_probability: number;
  problematic: boolean;
  per_candidate: PerCandidateCell[];
}

export interface InstancesPayload {
  experiment_id: string;
  criterion: { min_fraction_wrong: number; confidence_ceiling: number };
  problematic_only: boolean;
  instances: InstanceRow[];
}

export interface PairInstanceEntry {
  instance_id: string;
  label: number;
  pred_a: number;
  pred_b: number;
  maxproba_a: number;
  maxproba_b: number;
  delta: number;
}

export interface ComparePayload {
  experiment_id: string;
  candidate_a: string;
  candidate_b: string;
  agreement: {
    both_correct: number;
    only_a: number;
    only_b: number;
    both_wrong: number;
  };
  per_instance: PairInstanceEntry[];
  metric_delta: Record<string, number | null>;
  disagreements: string[];
}
