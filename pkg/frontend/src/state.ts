// View state shared by the three views; round-trips through the URL so an
// analysis position is shareable as a link.

import { METRIC_NAMES, MetricName } from "./types.js";

export type SortKey = "instance_id" | "fraction_wrong" | "mean_max_probability";

export interface ViewState {
  experimentId: string | null;
  weights: Record<MetricName, number>;
  selectedCandidates: string[]; // at most 2
  criterion: { min_fraction_wrong: number; confidence_ceiling: number };
  sortKey: SortKey;
  problematicOnly: boolean;
}

export function defaultState(): ViewState {
  const weights = {} as Record<MetricName, number>;
  for (const name of METRIC_NAMES) weights[name] = 1;
  return {
    experimentId: null,
    weights,
    selectedCandidates: [],
    criterion: { min_fraction_wrong: 0.5, confidence_ceiling: 0.55 },
    sortKey: "fraction_wrong",
    problematicOnly: false,
  };
}

export function weightsQuery(weights: Record<string, number>): string {
  return METRIC_NAMES.filter((name) => weights[name] > 0)
    .map((name) => `${name}:${weights[name]}`)
    .join(",");
}

export function stateToQuery(state: ViewState): string {
  const params = new URLSearchParams();
  if (state.experimentId) params.set("exp", state.experimentId);
  params.set("w", weightsQuery(state.weights));
  if (state.selectedCandidates[0]) params.set("a", state.selectedCandidates[0]);
  if (state.selectedCandidates[1]) params.set("b", state.selectedCandidates[1]);
  params.set("mfw", String(state.criterion.min_fraction_wrong));
  params.set("cc", String(state.criterion.confidence_ceiling));
  params.set("sort", state.sortKey);
  if (state.problematicOnly) params.set("prob", "1");
  return params.toString();
}

export function stateFromQuery(query: string): ViewState {
  const params = new URLSearchParams(query);
  const state = defaultState();
  state.experimentId = params.get("exp");
  const weightsText = params.get("w");
  if (weightsText) {
    for (const name of METRIC_NAMES) state.weights[name] = 0;
    for (const part of weightsText.split(",")) {
      const [name, raw] = part.split(":");
      const value = Number(raw);
      if ((METRIC_NAMES as readonly string[]).includes(name) && Number.isFinite(value) && value >= 0) {
        state.weights[name as MetricName] = value;
      }
    }
  }
  const a = params.get("a");
  const b = params.get("b");
  state.selectedCandidates = [a, b].filter((v): v is string => v !== null);
  const mfw = Number(params.get("mfw"));
  if (mfw > 0 && mfw <= 1) state.criterion.min_fraction_wrong = mfw;
  const cc = Number(params.get("cc"));
  if (cc > 0 && cc <= 1) state.criterion.confidence_ceiling = cc;
  const sort = params.get("sort");
  if (sort === "instance_id" || sort === "fraction_wrong" || sort === "mean_max_probability") {
    state.sortKey = sort;
  }
  state.problematicOnly = params.get("prob") === "1";
  return state;
}

export function pushStateToUrl(state: ViewState): void {
  const query = stateToQuery(state);
  history.replaceState(null, "", `${location.pathname}?${query}`);
}
