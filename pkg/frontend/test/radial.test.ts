import { beforeEach, describe, expect, it } from 'vitest';

import { renderRadial } from '../src/panels/radial.js';
import type { SliceName, StatisticsPayload } from '../src/types.js';
import { click, host, makeStat } from './helpers.js';

const COUNTS: Record<SliceName, number> = { Worst: 10, Bad: 20, Good: 30, Best: 40 };

function payload(): StatisticsPayload {
  return {
    All: { f1: makeStat(), f2: makeStat({ target_cor: -0.3, mi_target: 0.6 }) },
    Worst: null,
    Bad: { f1: makeStat({ degenerate: true }), f2: makeStat() },
    Good: { f1: makeStat(), f2: makeStat() },
    Best: { f1: makeStat(), f2: makeStat() },
  };
}

describe('radial slice panel', () => {
  beforeEach(() => {
    document.body.innerHTML = '';
  });

  it('draws the hub, four slice arcs and one node per feature', () => {
    const div = host();
    renderRadial(div, payload(), COUNTS);
    expect(div.querySelector('circle[data-slice="All"]')).not.toBeNull();
    expect(div.querySelectorAll('path[data-slice]').length).toBe(4);
    expect(div.querySelectorAll('g[data-feature]').length).toBe(2);
    expect(div.querySelector('h2')!.textContent).toBe('Slices: All');
  });

  it('colors transform satellites by the sign of their correlation delta', () => {
    const div = host();
    renderRadial(div, payload(), COUNTS);
    const sats = div.querySelectorAll('g[data-feature="f1"] circle.satellite');
    expect(sats.length).toBe(2); // l2 and p2; the inapplicable one is absent
    const byId = new Map([...sats].map((s) => [s.getAttribute('data-transform'), s]));
    expect(byId.get('l2')!.getAttribute('fill')).toBe('#1e8449'); // delta < 0
    expect(byId.get('p2')!.getAttribute('fill')).toBe('#b03a2e'); // delta > 0
  });

  it('switches slice on arc click and reports empty slices', () => {
    const div = host();
    renderRadial(div, payload(), COUNTS);
    click(div.querySelector('path[data-slice="Worst"]')!);
    expect(div.querySelector('h2')!.textContent).toBe('Slices: Worst');
    const empty = div.querySelector('[data-role="no-values"]')!;
    expect(empty.textContent).toBe('no values');
    expect(div.querySelectorAll('g[data-feature]').length).toBe(0);
  });

  it('draws degenerate features hollow without a correlation arc', () => {
    const div = host();
    renderRadial(div, payload(), COUNTS);
    click(div.querySelector('path[data-slice="Bad"]')!);
    const node = div.querySelector('g[data-feature="f1"]')!;
    expect(node.classList.contains('degenerate')).toBe(true);
    expect(node.querySelector('path.cor-arc')).toBeNull();
    expect(node.querySelectorAll('circle.satellite').length).toBe(0);
  });

  it('collapse hides satellites and flips to expand', () => {
    const div = host();
    renderRadial(div, payload(), COUNTS);
    const button = div.querySelector('button[data-role="collapse"]')!;
    expect(button.textContent).toBe('collapse');
    click(button);
    expect(div.querySelectorAll('circle.satellite').length).toBe(0);
    expect(div.querySelector('button[data-role="collapse"]')!.textContent).toBe('expand');
  });

  it('zoom and rotate change the view and reset restores it', () => {
    const div = host();
    renderRadial(div, payload(), COUNTS);
    const before = div.querySelector('svg')!.innerHTML;
    click(div.querySelector('button[data-role="zoom-in"]')!);
    expect(div.querySelector('svg')!.innerHTML).not.toBe(before);
    click(div.querySelector('button[data-role="rotate"]')!);
    click(div.querySelector('button[data-role="reset"]')!);
    expect(div.querySelector('svg')!.innerHTML).toBe(before);
  });

  it('renders byte-identically for the same payload', () => {
    const a = host();
    const b = host();
    renderRadial(a, payload(), COUNTS);
    renderRadial(b, payload(), COUNTS);
    expect(a.innerHTML).toBe(b.innerHTML);
  });
});
