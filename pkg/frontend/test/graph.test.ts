import { beforeEach, describe, expect, it, vi } from 'vitest';

import { layoutNodes, renderGraph, vifSegments, type GraphView } from '../src/panels/graph.js';
import type { TransformsPayload } from '../src/types.js';
import { click, flush, host, makeStat } from './helpers.js';

function view(over: Partial<GraphView> = {}): GraphView {
  return {
    graph: {
      slice: 'All',
      min_cor: 0.3,
      edges: [
        ['f1', 'f2', 0.8],
        ['f2', 'f3', -0.4],
      ],
    },
    stats: {
      f1: makeStat({ vif: 'inf', vif_state: 'severe' }),
      f2: makeStat({ vif: 7, vif_state: 'high' }),
      f3: makeStat({ vif: 2.5, vif_state: 'low' }),
      f4: makeStat({ vif: 12, vif_state: 'severe' }),
    },
    classNames: ['hi', 'lo'],
    locked: false,
    ...over,
  };
}

const hooks = () => ({
  onMinCor: vi.fn(),
  onSliceChange: vi.fn(),
  onTransforms: vi.fn<[string], Promise<TransformsPayload>>(),
  onTransform: vi.fn(),
  onGenerate: vi.fn(),
});

describe('vifSegments', () => {
  it('fills one segment per crossed threshold', () => {
    expect(vifSegments(1)).toBe(0);
    expect(vifSegments(2.5)).toBe(0);
    expect(vifSegments(2.6)).toBe(1);
    expect(vifSegments(5)).toBe(1);
    expect(vifSegments(7)).toBe(2); // within (5, 10]: two of four
    expect(vifSegments(10)).toBe(2);
    expect(vifSegments(10.01)).toBe(3);
    expect(vifSegments('inf')).toBe(4);
  });
});

describe('layoutNodes', () => {
  it('is deterministic for identical input', () => {
    const names = ['f1', 'f2', 'f3', 'f4'];
    const edges: Array<[string, string, number]> = [['f1', 'f3', 0.9]];
    expect(layoutNodes(names, edges)).toEqual(layoutNodes(names, edges));
  });
});

describe('feature graph panel', () => {
  beforeEach(() => {
    document.body.innerHTML = '';
  });

  it('draws edges with width growing in |r|', () => {
    const div = host();
    renderGraph(div, view(), hooks());
    const edges = div.querySelectorAll('line.edge');
    expect(edges.length).toBe(2);
    expect(Number(edges[0].getAttribute('stroke-width'))).toBeCloseTo(1 + 5 * 0.8, 6);
    expect(Number(edges[1].getAttribute('stroke-width'))).toBeCloseTo(1 + 5 * 0.4, 6);
  });

  it('fills collinearity glyph segments per threshold crossed', () => {
    const div = host();
    renderGraph(div, view(), hooks());
    const filled = (name: string) =>
      div.querySelectorAll(`g[data-feature="${name}"] .vif-filled`).length;
    expect(filled('f1')).toBe(4);
    expect(filled('f2')).toBe(2);
    expect(filled('f3')).toBe(0);
    expect(filled('f4')).toBe(3);
    // every node carries the full four-segment glyph
    expect(div.querySelectorAll('g[data-feature="f3"] .vif-glyph path').length).toBe(4);
  });

  it('draws one bar per class under each node', () => {
    const div = host();
    renderGraph(div, view(), hooks());
    expect(div.querySelectorAll('g[data-feature="f1"] rect.class-bar').length).toBe(2);
  });

  it('reports min_cor changes and slice changes', () => {
    const div = host();
    const h = hooks();
    renderGraph(div, view(), h);
    const slider = div.querySelector('input[data-role="min-cor"]') as HTMLInputElement;
    slider.value = '0.55';
    slider.dispatchEvent(new Event('change', { bubbles: true }));
    expect(h.onMinCor).toHaveBeenCalledWith(0.55);

    const select = div.querySelector('select[data-role="graph-slice"]') as HTMLSelectElement;
    select.value = 'Best';
    select.dispatchEvent(new Event('change', { bubbles: true }));
    expect(h.onSliceChange).toHaveBeenCalledWith('Best');
  });

  it('fans out transforms on node click and applies one', async () => {
    const div = host();
    const h = hooks();
    h.onTransforms.mockResolvedValue({
      feature: 'f1',
      transforms: [
        { id: 'l2', category: 'logarithmic', applicable: true, reason: null },
        { id: 'i', category: 'reciprocal', applicable: false, reason: 'zero values' },
      ],
      impact: null,
    });
    renderGraph(div, view(), h);
    click(div.querySelector('g[data-feature="f1"]')!);
    await flush();
    expect(h.onTransforms).toHaveBeenCalledWith('f1');
    const fan = div.querySelector('[data-role="transform-fan"]')!;
    const l2 = fan.querySelector('button[data-transform="l2"]') as HTMLButtonElement;
    const i = fan.querySelector('button[data-transform="i"]') as HTMLButtonElement;
    expect(l2.disabled).toBe(false);
    expect(i.disabled).toBe(true);
    expect(i.title).toBe('zero values');
    click(l2);
    expect(h.onTransform).toHaveBeenCalledWith('f1', 'l2');
  });

  it('generation mode selects at most three nodes and enables generate', () => {
    const div = host();
    const h = hooks();
    renderGraph(div, view(), h);
    const generate = () => div.querySelector('button[data-role="generate"]') as HTMLButtonElement;
    const node = (name: string) => div.querySelector(`g[data-feature="${name}"]`)!;
    expect(generate().disabled).toBe(true);

    click(div.querySelector('button[data-role="gen-mode"]')!);
    expect(generate().disabled).toBe(true);
    click(node('f1'));
    expect(generate().disabled).toBe(true); // one selected is not enough
    click(node('f2'));
    expect(generate().disabled).toBe(false);
    click(node('f3'));
    expect(generate().disabled).toBe(false);
    click(node('f4')); // fourth selection is ignored
    expect(div.querySelectorAll('.gen-selected').length).toBe(3);
    click(generate());
    expect(h.onGenerate).toHaveBeenCalledWith(['f1', 'f2', 'f3']);
  });

  it('shows no values when the slice has no statistics', () => {
    const div = host();
    renderGraph(div, view({ stats: null }), hooks());
    expect(div.querySelector('[data-role="no-values"]')!.textContent).toBe('no values');
    expect(div.querySelectorAll('g[data-feature]').length).toBe(0);
  });

  it('renders byte-identically for the same payload', () => {
    const a = host();
    const b = host();
    renderGraph(a, view(), hooks());
    renderGraph(b, view(), hooks());
    expect(a.innerHTML).toBe(b.innerHTML);
  });
});
