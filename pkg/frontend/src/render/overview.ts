// Metamodel overview: one card per candidate in ranking order, a bar per
// metric, failed candidates greyed out at the end and never ranked.

import { METRIC_NAMES, RankingPayload } from "../types.js";

const METRIC_LABELS: Record<string, string> = {
  accuracy: "ACC",
  balanced_accuracy: "BAC",
  precision_macro: "PRE",
  recall_macro: "REC",
  f1_macro: "F1",
  roc_auc: "AUC",
  geometric_mean: "GM",
  mcc: "MCC",
};

function metricBar(name: string, value: number | null): HTMLElement {
  const row = document.createElement("div");
  row.className = "metric-row";
  const label = document.createElement("span");
  label.className = "metric-label";
  label.textContent = METRIC_LABELS[name] ?? name;
  const track = document.createElement("div");
  track.className = "metric-track";
  const bar = document.createElement("div");
  if (value === null) {
    bar.className = "metric-bar undefined";
    bar.title = `${name}: undefined for this experiment`;
  } else {
    bar.className = "metric-bar";
    // MCC lives in [-1,1]; the API's raw value is shown, only the bar width is scaled.
    const width = name === "mcc" ? (value + 1) / 2 : value;
    bar.style.width = `${(width * 100).toFixed(1)}%`;
    bar.title = `${name}: ${value.toFixed(4)}`;
  }
  track.appendChild(bar);
  const text = document.createElement("span");
  text.className = "metric-value";
  text.textContent = value === null ? "n/a" : value.toFixed(3);
  row.append(label, track, text);
  return row;
}

export function renderOverview(
  container: HTMLElement,
  payload: RankingPayload,
  selected: string[],
  onSelect: (candidateId: string) => void,
): void {
  container.replaceChildren();
  payload.ranking.forEach((entry, index) => {
    const card = document.createElement("div");
    card.className = "card";
    card.dataset.candidateId = entry.candidate_id;
    if (selected.includes(entry.candidate_id)) card.classList.add("selected");

    const header = document.createElement("div");
    header.className = "card-header";
    const rank = document.createElement("span");
    rank.className = "rank";
    rank.textContent = `#${index + 1}`;
    const score = document.createElement("span");
    score.className = "score";
    score.textContent = entry.score.toFixed(4);
    header.append(rank, score);

    const title = document.createElement("div");
    title.className = "card-title";
    title.textContent = entry.candidate_id;
    title.title = entry.algorithm;

    const bars = document.createElement("div");
    bars.className = "metric-bars";
    for (const name of METRIC_NAMES) bars.appendChild(metricBar(name, entry.metrics[name]));

    card.append(header, title, bars);
    card.addEventListener("click", () => onSelect(entry.candidate_id));
    container.appendChild(card);
  });

  for (const failure of payload.failures) {
    const card = document.createElement("div");
    card.className = "card failed";
    card.dataset.candidateId = failure.candidate_id;
    const badge = document.createElement("span");
    badge.className = "failure-badge";
    badge.textContent = "training failed";
    const title = document.createElement("div");
    title.className = "card-title";
    title.textContent = failure.candidate_id;
    title.title = failure.message;
    card.append(badge, title);
    container.appendChild(card);
  }
}
