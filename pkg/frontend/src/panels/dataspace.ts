// Probability strip: every instance as a jittered dot at its predicted
// probability, slice bands behind, and two draggable threshold handles.
// The handle for the lower cut lives in [5, 45] and the upper one in
// [55, 95]; drags outside those ranges clamp and surface the legal range
// instead of submitting an invalid value. The midline at 50 is fixed.

import { SLICE_COLORS, THRESHOLD_GRAY } from '../colors.js';
import type { ProbabilitiesPayload, SliceName } from '../types.js';
import { clamp, htmlEl, seededRng, svgEl } from '../util.js';

export type DataspaceHooks = {
  onThresholds: (low: number, high: number) => void;
};

export const LOW_RANGE: [number, number] = [5, 45];
export const HIGH_RANGE: [number, number] = [55, 95];

// fixed pixel geometry: drag math divides by these, never by a measured
// bounding box, so it behaves the same under test DOMs with zero-size rects
export const WIDTH = 640;
export const HEIGHT = 210;
const ML = 34;
const MR = 18;
const INNER = WIDTH - ML - MR;
const STRIP_TOP = 34;
const STRIP_BOT = 150;

const SLICE_ORDER: SliceName[] = ['Worst', 'Bad', 'Good', 'Best'];

export function xOf(pct: number): number {
  return ML + (pct / 100) * INNER;
}

function pctOf(x: number): number {
  return ((x - ML) / INNER) * 100;
}

export function renderDataspace(
  container: HTMLElement,
  payload: ProbabilitiesPayload,
  hooks: DataspaceHooks,
): void {
  container.textContent = '';
  container.classList.add('panel', 'dataspace');
  container.appendChild(htmlEl('h2', {}, 'Data space'));

  const svg = svgEl('svg', {
    width: WIDTH,
    height: HEIGHT,
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    'data-role': 'dataspace-svg',
  });
  container.appendChild(svg);

  let low = payload.thresholds.low;
  let high = payload.thresholds.high;
  const fixed = payload.thresholds.fixed;

  // slice bands, redrawn live while a handle moves
  const bandLayer = svgEl('g', { 'data-role': 'bands' });
  svg.appendChild(bandLayer);
  const drawBands = () => {
    bandLayer.textContent = '';
    const cuts = [0, low, fixed, high, 100];
    SLICE_ORDER.forEach((slice, i) => {
      bandLayer.appendChild(
        svgEl('rect', {
          x: xOf(cuts[i]),
          y: STRIP_TOP,
          width: Math.max(0, xOf(cuts[i + 1]) - xOf(cuts[i])),
          height: STRIP_BOT - STRIP_TOP,
          fill: SLICE_COLORS[slice],
          'fill-opacity': 0.12,
        }),
      );
    });
  };
  drawBands();

  // jittered instance dots; seeded so repeated renders are identical
  const rng = seededRng(11);
  const dots = svgEl('g', { 'data-role': 'dots' });
  payload.probabilities.forEach((p, i) => {
    dots.appendChild(
      svgEl('circle', {
        class: 'dot',
        cx: xOf(p * 100),
        cy: STRIP_TOP + 10 + rng() * (STRIP_BOT - STRIP_TOP - 20),
        r: 2.4,
        fill: SLICE_COLORS[payload.assignment[i]],
        'fill-opacity': 0.7,
      }),
    );
  });
  svg.appendChild(dots);

  for (const tick of [0, 25, 50, 75, 100]) {
    const t = svgEl('text', {
      x: xOf(tick),
      y: STRIP_BOT + 16,
      class: 'tick',
      'text-anchor': 'middle',
    });
    t.textContent = `${tick}%`;
    svg.appendChild(t);
  }

  svg.appendChild(
    svgEl('line', {
      'data-role': 'fixed-line',
      x1: xOf(fixed),
      y1: STRIP_TOP - 6,
      x2: xOf(fixed),
      y2: STRIP_BOT + 2,
      stroke: THRESHOLD_GRAY,
      'stroke-dasharray': '4 3',
      'stroke-width': 1.5,
    }),
  );

  const hint = htmlEl('div', { 'data-role': 'range-hint', class: 'hint' });
  hint.hidden = true;

  const makeHandle = (role: string, value: number, range: [number, number]) => {
    const g = svgEl('g', { 'data-role': role, class: 'handle' });
    g.appendChild(
      svgEl('line', {
        x1: 0,
        y1: STRIP_TOP - 6,
        x2: 0,
        y2: STRIP_BOT + 2,
        stroke: '#333333',
        'stroke-width': 2,
      }),
    );
    g.appendChild(
      svgEl('rect', { x: -5, y: STRIP_TOP - 18, width: 10, height: 14, rx: 2, fill: '#333333' }),
    );
    const label = svgEl('text', {
      x: 0,
      y: STRIP_TOP - 22,
      class: 'handle-label',
      'text-anchor': 'middle',
    });
    g.appendChild(label);
    svg.appendChild(g);

    const position = (v: number) => {
      g.setAttribute('transform', `translate(${xOf(v)}, 0)`);
      label.textContent = `${Math.round(v)}%`;
    };
    position(value);

    const doc = svg.ownerDocument;
    const onMove = (ev: MouseEvent) => {
      const raw = pctOf(ev.clientX - svg.getBoundingClientRect().left);
      const next = Math.round(clamp(raw, range[0], range[1]));
      if (raw < range[0] || raw > range[1]) {
        hint.textContent = `${role === 'handle-low' ? 'lower' : 'upper'} threshold stays within [${range[0]}, ${range[1]}]`;
        hint.hidden = false;
      }
      if (role === 'handle-low') low = next;
      else high = next;
      position(next);
      drawBands();
    };
    const onUp = () => {
      doc.removeEventListener('mousemove', onMove);
      doc.removeEventListener('mouseup', onUp);
      if (low !== payload.thresholds.low || high !== payload.thresholds.high) {
        hooks.onThresholds(low, high);
      }
    };
    g.addEventListener('mousedown', (ev) => {
      ev.preventDefault();
      hint.hidden = true;
      doc.addEventListener('mousemove', onMove);
      doc.addEventListener('mouseup', onUp);
    });
  };

  makeHandle('handle-low', low, LOW_RANGE);
  makeHandle('handle-high', high, HIGH_RANGE);

  const legend = htmlEl('div', { 'data-role': 'slice-counts', class: 'legend' });
  for (const slice of SLICE_ORDER) {
    const item = htmlEl('span', { class: 'legend-item' });
    const swatch = htmlEl('span', { class: 'swatch' });
    swatch.style.background = SLICE_COLORS[slice];
    item.appendChild(swatch);
    item.appendChild(htmlEl('span', {}, `${slice} ${payload.counts[slice] ?? 0}`));
    legend.appendChild(item);
  }
  container.appendChild(legend);
  container.appendChild(hint);
}
