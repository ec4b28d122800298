// Instance table: per-row truth, difficulty stats from the API, a probability
// strip with one segment per metamodel, problematic rows flagged.

import { InstancesPayload, InstanceRow } from "../types.js";
import { SortKey } from "../state.js";

function sortRows(rows: InstanceRow[], key: SortKey): InstanceRow[] {
  const sorted = [...rows];
  if (key === "instance_id") {
    sorted.sort((a, b) => a.instance_id.localeCompare(b.instance_id));
  } else if (key === "fraction_wrong") {
    sorted.sort((a, b) => b.fraction_wrong - a.fraction_wrong);
  } else {
    sorted.sort((a, b) => a.mean_max_probability - b.mean_max_probability);
  }
  return sorted;
}

function probabilityStrip(row: InstanceRow): HTMLElement {
  const strip = document.createElement("div");
  strip.className = "proba-strip";
  for (const cell of row.per_candidate) {
    const segment = document.createElement("span");
    segment.className = cell.correct ? "proba-segment correct" : "proba-segment wrong";
    segment.style.opacity = cell.max_probability.toFixed(3);
    segment.title =
      `${cell.candidate_id}: ${cell.predicted_class} ` +
      `(p=${cell.max_probability.toFixed(3)}${cell.correct ? "" : ", wrong"})`;
    strip.appendChild(segment);
  }
  return strip;
}

export function renderInstances(
  container: HTMLElement,
  payload: InstancesPayload,
  sortKey: SortKey,
  onSort: (key: SortKey) => void,
): void {
  container.replaceChildren();
  const table = document.createElement("table");
  table.className = "instance-table";

  const head = document.createElement("tr");
  const columns: Array<[string, SortKey | null]> = [
    ["instance", "instance_id"],
    ["true class", null],
    ["fraction wrong", "fraction_wrong"],
    ["mean max p", "mean_max_probability"],
    ["metamodels", null],
  ];
  for (const [label, key] of columns) {
    const th = document.createElement("th");
    th.textContent = label + (key === sortKey ? " ▾" : "");
    if (key) {
      th.classList.add("sortable");
      th.addEventListener("click", () => onSort(key));
    }
    head.appendChild(th);
  }
  table.appendChild(head);

  for (const row of sortRows(payload.instances, sortKey)) {
    const tr = document.createElement("tr");
    tr.dataset.instanceId = row.instance_id;
    if (row.problematic) tr.classList.add("problematic");

    const idCell = document.createElement("td");
    idCell.textContent = (row.problematic ? "⚠ " : "") + row.instance_id;
    const classCell = document.createElement("td");
    classCell.textContent = row.true_class;
    const wrongCell = document.createElement("td");
    wrongCell.textContent = row.fraction_wrong.toFixed(3);
    const confidenceCell = document.createElement("td");
    confidenceCell.textContent = row.mean_max_probability.toFixed(3);
    const stripCell = document.createElement("td");
    stripCell.appendChild(probabilityStrip(row));

    tr.append(idCell, classCell, wrongCell, confidenceCell, stripCell);
    table.appendChild(tr);
  }
  container.appendChild(table);
}
