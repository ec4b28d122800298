// Application shell: wires the weight sliders, threshold inputs, and candidate
// selection to API queries and the three render modules. All computation is
// server-side; this file only moves payload fields onto the screen.

import { fetchComparison, fetchInstances, fetchRankingLatest, listExperiments } from "./api.js";
import { renderComparison } from "./render/comparison.js";
import { renderInstances } from "./render/instances.js";
import { renderOverview } from "./render/overview.js";
import { defaultState, pushStateToUrl, SortKey, stateFromQuery, ViewState, weightsQuery } from "./state.js";
import { METRIC_NAMES, MetricName } from "./types.js";

export interface AppHandles {
  state: ViewState;
  refreshRanking: () => Promise<void>;
  refreshInstances: () => Promise<void>;
  refreshComparison: () => Promise<void>;
  handleWeightInput: (name: MetricName, value: number) => Promise<void>;
  handleCriterionInput: (field: "min_fraction_wrong" | "confidence_ceiling", value: number) => Promise<void>;
  selectCandidate: (candidateId: string) => Promise<void>;
  swapSelection: () => Promise<void>;
}

function element<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className: string,
  parent: HTMLElement,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  node.className = className;
  parent.appendChild(node);
  return node;
}

export function createApp(root: HTMLElement, initialQuery?: string): AppHandles {
  const state = initialQuery !== undefined ? stateFromQuery(initialQuery) : defaultState();

  root.replaceChildren();
  const toolbar = element("div", "toolbar", root);
  const experimentSelect = element("select", "experiment-select", toolbar);
  const weightsPanel = element("div", "weights-panel", toolbar);
  const weightsError = element("div", "weights-error hidden", toolbar);
  weightsError.textContent = "at least one metric weight must be positive";

  const overviewSection = element("section", "overview", root);
  const overviewTitle = element("h2", "", overviewSection);
  overviewTitle.textContent = "metamodels";
  const overviewGrid = element("div", "overview-grid", overviewSection);

  const instancesSection = element("section", "instances", root);
  const instancesTitle = element("h2", "", instancesSection);
  instancesTitle.textContent = "instances";
  const criterionPanel = element("div", "criterion-panel", instancesSection);
  const criterionError = element("div", "criterion-error hidden", instancesSection);
  criterionError.textContent = "thresholds must lie in (0, 1]";
  const instancesContainer = element("div", "instances-container", instancesSection);

  const comparisonSection = element("section", "comparison", root);
  const comparisonTitle = element("h2", "", comparisonSection);
  comparisonTitle.textContent = "pairwise comparison";
  const swapButton = element("button", "swap-button", comparisonSection);
  swapButton.textContent = "swap A/B";
  const comparisonContainer = element("div", "comparison-container", comparisonSection);

  const sliders = new Map<MetricName, HTMLInputElement>();
  for (const name of METRIC_NAMES) {
    const wrap = element("label", "weight-slider", weightsPanel);
    const caption = element("span", "", wrap);
    caption.textContent = name;
    const input = element("input", "", wrap);
    input.type = "range";
    input.min = "0";
    input.max = "2";
    input.step = "0.1";
    input.value = String(state.weights[name]);
    input.dataset.metric = name;
    input.addEventListener("input", () => void handleWeightInput(name, Number(input.value)));
    sliders.set(name, input);
  }

  const thresholdInputs: Record<string, HTMLInputElement> = {};
  for (const field of ["min_fraction_wrong", "confidence_ceiling"] as const) {
    const wrap = element("label", "criterion-input", criterionPanel);
    const caption = element("span", "", wrap);
    caption.textContent = field.replaceAll("_", " ");
    const input = element("input", "", wrap);
    input.type = "number";
    input.min = "0.01";
    input.max = "1";
    input.step = "0.05";
    input.value = String(state.criterion[field]);
    input.addEventListener("change", () => void handleCriterionInput(field, Number(input.value)));
    thresholdInputs[field] = input;
  }
  const problematicToggle = element("input", "problematic-toggle", criterionPanel);
  problematicToggle.type = "checkbox";
  problematicToggle.checked = state.problematicOnly;
  problematicToggle.addEventListener("change", () => {
    state.problematicOnly = problematicToggle.checked;
    void refreshInstances();
  });

  async function refreshRanking(): Promise<void> {
    if (!state.experimentId) return;
    const text = weightsQuery(state.weights);
    const payload = await fetchRankingLatest(state.experimentId, text);
    if (payload === null) return; // superseded by a newer slider position
    renderOverview(overviewGrid, payload, state.selectedCandidates, (cid) => void selectCandidate(cid));
    pushStateToUrl(state);
  }

  async function handleWeightInput(name: MetricName, value: number): Promise<void> {
    state.weights[name] = value;
    const allZero = METRIC_NAMES.every((metric) => state.weights[metric] <= 0);
    weightsError.classList.toggle("hidden", !allZero);
    if (allZero) return; // inline validation error, no request
    await refreshRanking();
  }

  async function refreshInstances(): Promise<void> {
    if (!state.experimentId) return;
    const payload = await fetchInstances(state.experimentId, state.problematicOnly, state.criterion);
    renderInstances(instancesContainer, payload, state.sortKey, (key: SortKey) => {
      state.sortKey = key;
      renderInstances(instancesContainer, payload, key, () => undefined);
      pushStateToUrl(state);
    });
    pushStateToUrl(state);
  }

  async function handleCriterionInput(
    field: "min_fraction_wrong" | "confidence_ceiling",
    value: number,
  ): Promise<void> {
    const valid = Number.isFinite(value) && value > 0 && value <= 1;
    criterionError.classList.toggle("hidden", valid);
    if (!valid) return; // criterion must stay in (0, 1]
    state.criterion[field] = value;
    await refreshInstances();
  }

  async function refreshComparison(): Promise<void> {
    const [a, b] = state.selectedCandidates;
    if (!state.experimentId || !a || !b) return;
    const payload = await fetchComparison(state.experimentId, a, b);
    renderComparison(comparisonContainer, payload);
    pushStateToUrl(state);
  }

  async function selectCandidate(candidateId: string): Promise<void> {
    const current = state.selectedCandidates;
    if (current.includes(candidateId)) {
      state.selectedCandidates = current.filter((cid) => cid !== candidateId);
    } else {
      state.selectedCandidates = [...current, candidateId].slice(-2);
    }
    await refreshRanking();
    await refreshComparison();
  }

  async function swapSelection(): Promise<void> {
    if (state.selectedCandidates.length === 2) {
      const [a, b] = state.selectedCandidates;
      state.selectedCandidates = [b, a];
      await refreshComparison();
    }
  }
  swapButton.addEventListener("click", () => void swapSelection());

  async function loadExperimentList(): Promise<void> {
    const summaries = await listExperiments();
    experimentSelect.replaceChildren();
    for (const summary of summaries) {
      const option = document.createElement("option");
      option.value = summary.experiment_id;
      option.textContent = `${summary.dataset_summary.name} (${summary.experiment_id})`;
      experimentSelect.appendChild(option);
    }
    if (!state.experimentId && summaries.length > 0) {
      state.experimentId = summaries[0].experiment_id;
    }
    if (state.experimentId) experimentSelect.value = state.experimentId;
  }
  experimentSelect.addEventListener("change", () => {
    state.experimentId = experimentSelect.value;
    state.selectedCandidates = [];
    void refreshRanking();
    void refreshInstances();
  });

  void loadExperimentList().then(() => {
    void refreshRanking();
    void refreshInstances();
    void refreshComparison();
  });

  return {
    state,
    refreshRanking,
    refreshInstances,
    refreshComparison,
    handleWeightInput,
    handleCriterionInput,
    selectCandidate,
    swapSelection,
  };
}
