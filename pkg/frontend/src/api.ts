// Thin API client. The ranking query is latest-wins: a newer slider position
// supersedes any in-flight request and stale responses are dropped.

import {
  ComparePayload,
  ExperimentSummary,
  InstancesPayload,
  RankingPayload,
} from "./types.js";

// Served from the same origin as the API by `metastack serve`; override with
// ?api=http://host:port for separate development.
const API_BASE = new URLSearchParams(window.location.search).get("api") ?? "";

async function getJson<T>(path: string): Promise<T> {
  const response = await fetch(`${API_BASE}${path}`);
  if (!response.ok) {
    let detail = `${response.status}`;
    try {
      const body = await response.json();
      detail = `${body.code}: ${body.message}`;
    } catch {
      // non-JSON error body; keep the status code
    }
    throw new Error(detail);
  }
  return (await response.json()) as T;
}

export function listExperiments(): Promise<ExperimentSummary[]> {
  return getJson<ExperimentSummary[]>("/experiments");
}

export function fetchInstances(
  experimentId: string,
  problematicOnly: boolean,
  criterion: { min_fraction_wrong: number; confidence_ceiling: number },
): Promise<InstancesPayload> {
  const params = new URLSearchParams({
    problematic: String(problematicOnly),
    min_fraction_wrong: String(criterion.min_fraction_wrong),
    confidence_ceiling: String(criterion.confidence_ceiling),
  });
  return getJson<InstancesPayload>(`/experiments/${experimentId}/instances?${params}`);
}

export function fetchComparison(
  experimentId: string,
  a: string,
  b: string,
): Promise<ComparePayload> {
  const params = new URLSearchParams({ a, b });
  return getJson<ComparePayload>(`/experiments/${experimentId}/compare?${params}`);
}

let rankingRequestToken = 0;

/** Resolves with null when a newer ranking request superseded this one. */
export async function fetchRankingLatest(
  experimentId: string,
  weightsText: string,
): Promise<RankingPayload | null> {
  const token = ++rankingRequestToken;
  const params = weightsText ? `?weights=${encodeURIComponent(weightsText)}` : "";
  const payload = await getJson<RankingPayload>(`/experiments/${experimentId}/ranking${params}`);
  if (token !== rankingRequestToken) return null; // stale
  return payload;
}
