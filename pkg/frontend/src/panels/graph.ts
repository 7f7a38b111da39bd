// Feature graph for one slice: nodes are the slice's features, edges join
// pairs whose absolute correlation clears the min_cor cutoff, with edge
// width growing with |r|. Each node wears a four-segment collinearity
// glyph (segments fill as the VIF crosses 2.5, 5, 10, infinity) and a
// small bar per class for the per-class correlations. Clicking a node
// fans out its applicable transforms; generation mode instead multi-selects
// two or three nodes, shown dark gray, to combine into a new feature.
// The layout is a fixed-iteration force relaxation from a circular start,
// so the same payload always yields the same picture.

import { CANDIDATE_GRAY } from '../colors.js';
import type { FeatureStatistics, GraphEdge, GraphPayload, TransformsPayload } from '../types.js';
import { clamp, fmt, htmlEl, svgEl } from '../util.js';

export type GraphHooks = {
  onMinCor: (value: number) => void;
  onSliceChange: (slice: string) => void;
  onTransforms: (feature: string) => Promise<TransformsPayload>;
  onTransform: (feature: string, id: string) => void;
  onGenerate: (sources: string[]) => void;
};

export type GraphView = {
  graph: GraphPayload;
  stats: Record<string, FeatureStatistics> | null;
  classNames: string[];
  locked: boolean;
};

const W = 520;
const H = 430;
const CX = W / 2;
const CY = 205;
const START_R = 140;
const MARGIN = 40;
const SLICES = ['All', 'Worst', 'Bad', 'Good', 'Best'];
const CLASS_PALETTE = ['#5b8db8', '#8a5a2b', '#6b6b6b', '#9a7fb8', '#4d8f6b'];
const GLYPH_FILL = '#7a1f1f';

/** Number of filled glyph segments for a variance inflation factor. */
export function vifSegments(vif: number | 'inf'): number {
  if (vif === 'inf') return 4;
  if (vif > 10) return 3;
  if (vif > 5) return 2;
  if (vif > 2.5) return 1;
  return 0;
}

function quadrantPath(cx: number, cy: number, q: number): string {
  // annulus quadrant from q*90 degrees, measured from 12 o'clock
  const r0 = 16;
  const r1 = 21;
  const a0 = (q * Math.PI) / 2;
  const a1 = a0 + Math.PI / 2;
  const p = (r: number, a: number) => `${cx + r * Math.sin(a)} ${cy - r * Math.cos(a)}`;
  return (
    `M ${p(r1, a0)} A ${r1} ${r1} 0 0 1 ${p(r1, a1)} ` +
    `L ${p(r0, a1)} A ${r0} ${r0} 0 0 0 ${p(r0, a0)} Z`
  );
}

/** Deterministic positions: circular start, fixed number of force steps. */
export function layoutNodes(
  names: string[],
  edges: GraphEdge[],
): Map<string, [number, number]> {
  const n = names.length;
  const index = new Map(names.map((name, i) => [name, i] as const));
  const xs = names.map((_, i) => CX + START_R * Math.sin((2 * Math.PI * i) / Math.max(n, 1)));
  const ys = names.map((_, i) => CY - START_R * Math.cos((2 * Math.PI * i) / Math.max(n, 1)));

  for (let step = 0; step < 80; step++) {
    const fx = new Array<number>(n).fill(0);
    const fy = new Array<number>(n).fill(0);
    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        const dx = xs[i] - xs[j];
        const dy = ys[i] - ys[j];
        const d2 = Math.max(dx * dx + dy * dy, 1e-6);
        const f = 2600 / d2;
        const d = Math.sqrt(d2);
        fx[i] += (f * dx) / d;
        fy[i] += (f * dy) / d;
        fx[j] -= (f * dx) / d;
        fy[j] -= (f * dy) / d;
      }
      // gentle pull to center keeps disconnected nodes on screen
      fx[i] += (CX - xs[i]) * 0.02;
      fy[i] += (CY - ys[i]) * 0.02;
    }
    for (const [a, b, r] of edges) {
      const i = index.get(a);
      const j = index.get(b);
      if (i === undefined || j === undefined) continue;
      const dx = xs[j] - xs[i];
      const dy = ys[j] - ys[i];
      const d = Math.sqrt(Math.max(dx * dx + dy * dy, 1e-6));
      const pull = 0.01 * Math.abs(r) * (d - 70);
      fx[i] += pull * (dx / d);
      fy[i] += pull * (dy / d);
      fx[j] -= pull * (dx / d);
      fy[j] -= pull * (dy / d);
    }
    const damp = 0.85;
    for (let i = 0; i < n; i++) {
      xs[i] = clamp(xs[i] + clamp(fx[i] * damp, -12, 12), MARGIN, W - MARGIN);
      ys[i] = clamp(ys[i] + clamp(fy[i] * damp, -12, 12), MARGIN, H - MARGIN - 10);
    }
  }
  return new Map(names.map((name, i) => [name, [xs[i], ys[i]] as [number, number]]));
}

export function renderGraph(container: HTMLElement, view: GraphView, hooks: GraphHooks): void {
  let genMode = false;
  const selected = new Set<string>();
  let fan: { feature: string; payload: TransformsPayload } | null = null;

  const draw = () => {
    container.textContent = '';
    container.classList.add('panel', 'graph');
    container.appendChild(htmlEl('h2', {}, `Feature graph: ${view.graph.slice}`));

    const toolbar = htmlEl('div', { class: 'toolbar' });

    const sliceSelect = htmlEl('select', { 'data-role': 'graph-slice' });
    for (const s of SLICES) {
      const opt = htmlEl('option', { value: s }, s);
      if (s === view.graph.slice) opt.selected = true;
      sliceSelect.appendChild(opt);
    }
    sliceSelect.addEventListener('change', () => hooks.onSliceChange(sliceSelect.value));
    toolbar.appendChild(sliceSelect);

    const slider = htmlEl('input', {
      type: 'range',
      min: '0',
      max: '1',
      step: '0.05',
      value: String(view.graph.min_cor),
      'data-role': 'min-cor',
    });
    const sliderLabel = htmlEl('span', { class: 'slider-label' }, `min |r| ${fmt(view.graph.min_cor, 2)}`);
    slider.addEventListener('change', () => hooks.onMinCor(Number(slider.value)));
    slider.addEventListener('input', () => {
      sliderLabel.textContent = `min |r| ${fmt(Number(slider.value), 2)}`;
    });
    toolbar.appendChild(slider);
    toolbar.appendChild(sliderLabel);

    const modeButton = htmlEl(
      'button',
      { 'data-role': 'gen-mode' },
      genMode ? 'exit generation' : 'generation mode',
    );
    modeButton.addEventListener('click', () => {
      genMode = !genMode;
      selected.clear();
      fan = null;
      draw();
    });
    toolbar.appendChild(modeButton);

    const generateButton = htmlEl('button', { 'data-role': 'generate' }, 'generate');
    generateButton.disabled = view.locked || !genMode || selected.size < 2 || selected.size > 3;
    generateButton.addEventListener('click', () => hooks.onGenerate([...selected]));
    toolbar.appendChild(generateButton);

    container.appendChild(toolbar);

    const svg = svgEl('svg', {
      width: W,
      height: H,
      viewBox: `0 0 ${W} ${H}`,
      'data-role': 'graph-svg',
    });
    container.appendChild(svg);

    if (!view.stats) {
      const empty = svgEl('text', {
        'data-role': 'no-values',
        x: CX,
        y: CY,
        'text-anchor': 'middle',
        class: 'empty-note',
      });
      empty.textContent = 'no values';
      svg.appendChild(empty);
      return;
    }

    const names = Object.keys(view.stats);
    const pos = layoutNodes(names, view.graph.edges);

    for (const [a, b, r] of view.graph.edges) {
      const pa = pos.get(a);
      const pb = pos.get(b);
      if (!pa || !pb) continue;
      const edge = svgEl('line', {
        class: 'edge',
        'data-a': a,
        'data-b': b,
        x1: pa[0],
        y1: pa[1],
        x2: pb[0],
        y2: pb[1],
        stroke: r >= 0 ? '#5a6b5d' : '#8a4a4a',
        'stroke-width': 1 + 5 * Math.abs(r),
        'stroke-opacity': 0.75,
      });
      const title = svgEl('title');
      title.textContent = `${a} / ${b}: r ${fmt(r)}`;
      edge.appendChild(title);
      svg.appendChild(edge);
    }

    for (const name of names) {
      const stat = view.stats[name];
      const [x, y] = pos.get(name)!;
      const node = svgEl('g', { 'data-feature': name, class: 'graph-node' });
      const isSelected = selected.has(name);
      node.appendChild(
        svgEl('circle', {
          cx: x,
          cy: y,
          r: 13,
          fill: isSelected ? CANDIDATE_GRAY : '#e3dccb',
          stroke: isSelected ? '#222222' : '#555555',
          'stroke-width': isSelected ? 2 : 1,
        }),
      );
      if (isSelected) node.classList.add('gen-selected');

      const filled = vifSegments(stat.vif);
      const glyph = svgEl('g', { class: 'vif-glyph' });
      const glyphTitle = svgEl('title');
      glyphTitle.textContent = `VIF ${stat.vif === 'inf' ? 'inf' : fmt(stat.vif as number)} (${stat.vif_state})`;
      glyph.appendChild(glyphTitle);
      for (let q = 0; q < 4; q++) {
        glyph.appendChild(
          svgEl('path', {
            class: q < filled ? 'vif-filled' : 'vif-empty',
            d: quadrantPath(x, y, q),
            fill: q < filled ? GLYPH_FILL : 'none',
            stroke: '#b5ab98',
            'stroke-width': 0.8,
          }),
        );
      }
      node.appendChild(glyph);

      view.classNames.forEach((cls, j) => {
        const v = stat.per_class_cor[cls] ?? 0;
        const h = Math.abs(v) * 20;
        const bar = svgEl('rect', {
          class: 'class-bar',
          'data-class': cls,
          x: x - ((view.classNames.length * 6) / 2) + j * 6,
          y: y + 24 + (20 - h),
          width: 5,
          height: Math.max(h, 0.5),
          fill: CLASS_PALETTE[j % CLASS_PALETTE.length],
        });
        const barTitle = svgEl('title');
        barTitle.textContent = `${cls}: r ${fmt(v)}`;
        bar.appendChild(barTitle);
        node.appendChild(bar);
      });

      const label = svgEl('text', {
        x,
        y: y - 26,
        'text-anchor': 'middle',
        class: 'node-label',
      });
      label.textContent = name;
      node.appendChild(label);

      node.addEventListener('click', () => {
        if (genMode) {
          if (selected.has(name)) selected.delete(name);
          else if (selected.size < 3) selected.add(name);
          draw();
          return;
        }
        if (fan && fan.feature === name) {
          fan = null;
          draw();
          return;
        }
        void hooks.onTransforms(name).then((payload) => {
          fan = { feature: name, payload };
          draw();
        });
      });
      svg.appendChild(node);
    }

    if (fan) {
      const panel = htmlEl('div', { 'data-role': 'transform-fan', class: 'fan' });
      panel.appendChild(htmlEl('h3', {}, `Transforms for ${fan.feature}`));
      for (const entry of fan.payload.transforms) {
        const b = htmlEl('button', { 'data-transform': entry.id }, `${entry.id} (${entry.category})`);
        b.disabled = view.locked || !entry.applicable;
        if (!entry.applicable && entry.reason) b.title = entry.reason;
        const feature = fan.feature;
        b.addEventListener('click', () => hooks.onTransform(feature, entry.id));
        panel.appendChild(b);
      }
      container.appendChild(panel);
    }
  };

  draw();
}
