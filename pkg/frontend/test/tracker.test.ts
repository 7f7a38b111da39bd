import { beforeEach, describe, expect, it, vi } from 'vitest';

import { renderTracker, type TrackerView } from '../src/panels/tracker.js';
import { click, host, makeHistoryRow } from './helpers.js';

const BROWN = '#8a5a2b';
const TEAL = '#1f8a8a';

function view(over: Partial<TrackerView> = {}): TrackerView {
  return {
    history: [
      makeHistoryRow(),
      makeHistoryRow({
        ordinal: 1,
        kind: 'Exclude',
        subject: 'f4',
        became_best: false,
        combined: 2.5,
        accuracy_mean: 0.87,
        n_active: 10,
      }),
      makeHistoryRow({
        ordinal: 2,
        kind: 'Transform',
        subject: 'f1',
        became_best: true,
        combined: 2.7,
        accuracy_mean: 0.93,
        n_active: 10,
      }),
    ],
    bestOrdinal: 2,
    locked: false,
    ...over,
  };
}

describe('process tracker panel', () => {
  beforeEach(() => {
    document.body.innerHTML = '';
  });

  it('punches one mark per step, brown when it set a new best', () => {
    const div = host();
    renderTracker(div, view(), { onExport: () => {} });
    const steps = div.querySelectorAll('circle.step');
    expect(steps.length).toBe(3);
    expect(steps[0].getAttribute('fill')).toBe(BROWN);
    expect(steps[1].getAttribute('fill')).toBe(TEAL);
    expect(steps[2].getAttribute('fill')).toBe(BROWN);
  });

  it('rings the current best step', () => {
    const div = host();
    renderTracker(div, view(), { onExport: () => {} });
    const best = div.querySelector('circle.step.best-now')!;
    expect(best.getAttribute('data-ordinal')).toBe('2');
    expect(best.getAttribute('stroke-width')).toBe('2.5');
  });

  it('scales mark radius with the number of active features', () => {
    const div = host();
    renderTracker(div, view(), { onExport: () => {} });
    const steps = div.querySelectorAll('circle.step');
    const r0 = Number(steps[0].getAttribute('r'));
    const r1 = Number(steps[1].getAttribute('r'));
    expect(r0).toBeGreaterThan(r1); // 11 active vs 10 active
  });

  it('compares the selected step against the best in grouped bars', () => {
    const div = host();
    renderTracker(div, view(), { onExport: () => {} });
    for (const metric of ['accuracy', 'wprecision', 'wrecall']) {
      const group = div.querySelector(`g[data-metric="${metric}"]`)!;
      expect(group.querySelectorAll('rect.bar.current').length).toBe(1);
      expect(group.querySelectorAll('rect.bar.best').length).toBe(1);
      expect(group.querySelectorAll('line.whisker').length).toBe(2);
    }
    // latest step is selected by default
    expect(div.querySelector('[data-role="best-summary"]')!.textContent).toContain('viewing #2');
  });

  it('selecting an earlier step updates the comparison', () => {
    const div = host();
    renderTracker(div, view(), { onExport: () => {} });
    click(div.querySelector('circle.step[data-ordinal="1"]')!);
    expect(div.querySelector('[data-role="best-summary"]')!.textContent).toContain('viewing #1');
    const current = div.querySelector('g[data-metric="accuracy"] rect.bar.current')!;
    expect(Number(current.getAttribute('height'))).toBeCloseTo(0.87 * 150, 6);
  });

  it('whiskers span one standard deviation around the mean', () => {
    const div = host();
    renderTracker(div, view(), { onExport: () => {} });
    const whisker = div.querySelector('g[data-metric="accuracy"] line.whisker')!;
    const y1 = Number(whisker.getAttribute('y1'));
    const y2 = Number(whisker.getAttribute('y2'));
    // selected row: accuracy 0.93 +/- 0.02 over a 150px scale
    expect(Math.abs(y2 - y1)).toBeCloseTo(2 * 0.02 * 150, 6);
  });

  it('export is wired and locked disables it', () => {
    const div = host();
    const onExport = vi.fn();
    renderTracker(div, view(), { onExport });
    click(div.querySelector('button[data-role="export"]')!);
    expect(onExport).toHaveBeenCalledTimes(1);

    document.body.innerHTML = '';
    const div2 = host();
    renderTracker(div2, view({ locked: true }), { onExport });
    expect((div2.querySelector('button[data-role="export"]') as HTMLButtonElement).disabled).toBe(
      true,
    );
  });

  it('renders byte-identically for the same payload', () => {
    const a = host();
    const b = host();
    renderTracker(a, view(), { onExport: () => {} });
    renderTracker(b, view(), { onExport: () => {} });
    expect(a.innerHTML).toBe(b.innerHTML);
  });
});
