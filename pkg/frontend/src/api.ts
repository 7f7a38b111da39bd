// Thin typed client over the JSON API. Mutations are submitted as
// background jobs and polled until they settle; the caller serializes them
// through the MutationGate so at most one is in flight.

import type {
  GeneratePayload,
  GraphPayload,
  ImportancePayload,
  JobRecord,
  LogPayload,
  ProbabilitiesPayload,
  SessionSummary,
  StatisticsPayload,
  TransformsPayload,
} from './types.js';

const POLL_MS = 250;

async function getJson<T>(path: string): Promise<T> {
  const r = await fetch(path);
  if (!r.ok) throw new Error(`GET ${path} failed: ${r.status} ${await r.text()}`);
  return (await r.json()) as T;
}

async function send(method: string, path: string, body: unknown): Promise<unknown> {
  const r = await fetch(path, {
    method,
    headers: { 'content-type': 'application/json' },
    body: JSON.stringify(body),
  });
  if (!r.ok) throw new Error(`${method} ${path} failed: ${r.status} ${await r.text()}`);
  return await r.json();
}

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

/** Submit a mutation, then poll its job record until done or failed. */
export async function submitAndWait(path: string, body: unknown): Promise<unknown> {
  const first = (await send('POST', path, body)) as { job?: string };
  if (first.job === undefined) return first; // endpoint ran inline
  for (;;) {
    const record = await getJson<JobRecord>(`/jobs/${first.job}`);
    if (record.status === 'done') return record.result;
    if (record.status === 'failed') throw new Error(record.error ?? 'mutation failed');
    await sleep(POLL_MS);
  }
}

export const api = {
  session: () => getJson<SessionSummary>('/session'),
  probabilities: () => getJson<ProbabilitiesPayload>('/probabilities'),
  importance: () => getJson<ImportancePayload>('/importance'),
  statistics: () => getJson<StatisticsPayload>('/statistics'),
  graph: (slice: string, minCor: number) =>
    getJson<GraphPayload>(`/graph?slice=${encodeURIComponent(slice)}&min_cor=${minCor}`),
  transforms: (feature: string) =>
    getJson<TransformsPayload>(`/transforms/${encodeURIComponent(feature)}`),
  log: () => getJson<LogPayload>('/log'),

  include: (feature: string) => submitAndWait('/include', { feature }),
  exclude: (feature: string) => submitAndWait('/exclude', { feature }),
  transform: (feature: string, transform: string) =>
    submitAndWait('/transform', { feature, transform }),
  adopt: (sources: string[], adopt: string) => submitAndWait('/adopt', { sources, adopt }),
  generate: (sources: string[]) =>
    submitAndWait('/generate', { sources }) as Promise<GeneratePayload>,
  setThresholds: (low: number, high: number) =>
    send('PUT', '/thresholds?wait=true', { low, high }),
  exportBest: (outDir: string) => submitAndWait('/export', { out_dir: outDir }),
  save: (path: string) => send('POST', '/save?wait=true', { path }),
};
