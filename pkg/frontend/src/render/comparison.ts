// Pairwise view: 2x2 agreement quadrants, a signed per-instance delta chart
// (API order: strongest |delta| first), and the disagreement list.

import { ComparePayload } from "../types.js";

function quadrant(label: string, count: number, kind: string): HTMLElement {
  const cell = document.createElement("div");
  cell.className = `quadrant ${kind}`;
  cell.dataset.kind = kind;
  const value = document.createElement("div");
  value.className = "quadrant-count";
  value.textContent = String(count);
  const caption = document.createElement("div");
  caption.className = "quadrant-label";
  caption.textContent = label;
  cell.append(value, caption);
  return cell;
}

export function renderComparison(container: HTMLElement, payload: ComparePayload): void {
  container.replaceChildren();

  const heading = document.createElement("div");
  heading.className = "compare-heading";
  heading.textContent = `${payload.candidate_a}  vs  ${payload.candidate_b}`;
  container.appendChild(heading);

  const quadrants = document.createElement("div");
  quadrants.className = "quadrants";
  quadrants.append(
    quadrant("both correct", payload.agreement.both_correct, "both_correct"),
    quadrant("only A", payload.agreement.only_a, "only_a"),
    quadrant("only B", payload.agreement.only_b, "only_b"),
    quadrant("both wrong", payload.agreement.both_wrong, "both_wrong"),
  );
  container.appendChild(quadrants);

  const chart = document.createElement("div");
  chart.className = "delta-chart";
  for (const entry of payload.per_instance) {
    const row = document.createElement("div");
    row.className = "delta-row";
    row.dataset.instanceId = entry.instance_id;
    const id = document.createElement("span");
    id.className = "delta-id";
    id.textContent = entry.instance_id;
    const track = document.createElement("div");
    track.className = "delta-track";
    const bar = document.createElement("div");
    bar.className = entry.delta >= 0 ? "delta-bar positive" : "delta-bar negative";
    bar.style.width = `${(Math.abs(entry.delta) * 50).toFixed(1)}%`;
    bar.style[entry.delta >= 0 ? "left" : "right"] = "50%";
    bar.title = `A ${entry.maxproba_a.toFixed(3)} vs B ${entry.maxproba_b.toFixed(3)} (delta ${entry.delta.toFixed(3)})`;
    track.appendChild(bar);
    const value = document.createElement("span");
    value.className = "delta-value";
    value.textContent = entry.delta.toFixed(3);
    row.append(id, track, value);
    chart.appendChild(row);
  }
  container.appendChild(chart);

  const listTitle = document.createElement("div");
  listTitle.className = "disagreement-title";
  listTitle.textContent = `disagreements (${payload.disagreements.length})`;
  container.appendChild(listTitle);
  const list = document.createElement("ul");
  list.className = "disagreement-list";
  for (const instanceId of payload.disagreements) {
    const item = document.createElement("li");
    item.textContent = instanceId;
    list.appendChild(item);
  }
  container.appendChild(list);
}
