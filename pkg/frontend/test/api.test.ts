import { afterEach, describe, expect, it, vi } from 'vitest';

import { submitAndWait } from '../src/api.js';

type Call = { url: string; init?: RequestInit };

function fetchStub(script: Array<{ status?: number; body: unknown }>) {
  const calls: Call[] = [];
  const stub = vi.fn(async (url: string, init?: RequestInit) => {
    calls.push({ url, init });
    const step = script.shift() ?? { status: 500, body: { detail: 'script exhausted' } };
    return {
      ok: (step.status ?? 200) < 400,
      status: step.status ?? 200,
      json: async () => step.body,
      text: async () => JSON.stringify(step.body),
    } as Response;
  });
  vi.stubGlobal('fetch', stub);
  return calls;
}

describe('submitAndWait', () => {
  afterEach(() => {
    vi.unstubAllGlobals();
    vi.useRealTimers();
  });

  it('polls the job until it is done and returns its result', async () => {
    vi.useFakeTimers();
    const calls = fetchStub([
      { body: { job: 'job-3' } },
      { body: { id: 'job-3', status: 'running' } },
      { body: { id: 'job-3', status: 'done', result: { ok: 1 } } },
    ]);
    const pending = submitAndWait('/exclude', { feature: 'F4' });
    await vi.advanceTimersByTimeAsync(1000);
    expect(await pending).toEqual({ ok: 1 });
    expect(calls.map((c) => c.url)).toEqual(['/exclude', '/jobs/job-3', '/jobs/job-3']);
    expect(calls[0].init?.method).toBe('POST');
  });

  it('returns inline responses without polling', async () => {
    const calls = fetchStub([{ body: { low: 30, high: 75 } }]);
    expect(await submitAndWait('/thresholds', { low: 30, high: 75 })).toEqual({
      low: 30,
      high: 75,
    });
    expect(calls.length).toBe(1);
  });

  it('surfaces a failed job as an error', async () => {
    vi.useFakeTimers();
    fetchStub([
      { body: { job: 'job-9' } },
      { body: { id: 'job-9', status: 'failed', error: 'unknown feature' } },
    ]);
    const pending = submitAndWait('/exclude', { feature: 'nope' });
    const outcome = pending.then(
      () => 'resolved',
      (err: Error) => err.message,
    );
    await vi.advanceTimersByTimeAsync(1000);
    expect(await outcome).toBe('unknown feature');
  });

  it('rejects on a non-2xx submission', async () => {
    fetchStub([{ status: 409, body: { detail: 'another mutation is in flight' } }]);
    await expect(submitAndWait('/include', { feature: 'F4' })).rejects.toThrow('409');
  });
});
