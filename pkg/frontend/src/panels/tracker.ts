// Process tracker: a punchcard of every action taken, radius growing with
// how many features were active at that step, brown when that step set a
// new best. Clicking a step compares it against the best step in grouped
// bars (teal = selected step, brown = best) with black whiskers at one
// standard deviation over the validation folds. The export button writes
// the best dataset server-side.

import { BEST_BROWN, CURRENT_TEAL, ERROR_BLACK } from '../colors.js';
import type { HistoryRow } from '../types.js';
import { fmt, htmlEl, svgEl } from '../util.js';

export type TrackerHooks = {
  onExport: () => void;
};

export type TrackerView = {
  history: HistoryRow[];
  bestOrdinal: number;
  locked: boolean;
};

const METRICS: Array<{ key: 'accuracy' | 'wprecision' | 'wrecall'; label: string }> = [
  { key: 'accuracy', label: 'accuracy' },
  { key: 'wprecision', label: 'w. precision' },
  { key: 'wrecall', label: 'w. recall' },
];

const CARD_STEP = 46;
const CARD_H = 120;
const BARS_W = 330;
const BARS_H = 210;
const BAR_SCALE = 150;
const BASE_Y = 180;

function rowTitle(row: HistoryRow): string {
  const what = row.subject ? `${row.kind} ${row.subject}` : row.kind;
  return (
    `#${row.ordinal} ${what}: combined ${fmt(row.combined)}, ` +
    `accuracy ${fmt(row.accuracy_mean)} +/- ${fmt(row.accuracy_std)}, ` +
    `${row.n_active} active`
  );
}

export function renderTracker(container: HTMLElement, view: TrackerView, hooks: TrackerHooks): void {
  let selectedOrdinal = view.history.length
    ? view.history[view.history.length - 1].ordinal
    : 0;

  const draw = () => {
    container.textContent = '';
    container.classList.add('panel', 'tracker');
    container.appendChild(htmlEl('h2', {}, 'Process'));

    const byOrdinal = new Map(view.history.map((r) => [r.ordinal, r]));
    const best = byOrdinal.get(view.bestOrdinal);
    const selected = byOrdinal.get(selectedOrdinal) ?? best;

    const scroll = htmlEl('div', { class: 'punchcard-scroll' });
    const width = Math.max(360, 30 + view.history.length * CARD_STEP);
    const card = svgEl('svg', {
      width,
      height: CARD_H,
      viewBox: `0 0 ${width} ${CARD_H}`,
      'data-role': 'punchcard',
    });
    const maxActive = Math.max(1, ...view.history.map((r) => r.n_active));
    view.history.forEach((row, i) => {
      const cx = 28 + i * CARD_STEP;
      const isBestNow = row.ordinal === view.bestOrdinal;
      const mark = svgEl('circle', {
        class: isBestNow ? 'step best-now' : 'step',
        'data-ordinal': row.ordinal,
        cx,
        cy: 44,
        r: 5 + (row.n_active / maxActive) * 11,
        fill: row.became_best ? BEST_BROWN : CURRENT_TEAL,
        stroke: isBestNow ? ERROR_BLACK : 'none',
        'stroke-width': isBestNow ? 2.5 : 0,
        'fill-opacity': row.ordinal === selectedOrdinal ? 1 : 0.55,
      });
      const title = svgEl('title');
      title.textContent = rowTitle(row);
      mark.appendChild(title);
      mark.addEventListener('click', () => {
        selectedOrdinal = row.ordinal;
        draw();
      });
      card.appendChild(mark);
      const tag = svgEl('text', { x: cx, y: 86, 'text-anchor': 'middle', class: 'step-label' });
      tag.textContent = `#${row.ordinal}`;
      card.appendChild(tag);
      const kindTag = svgEl('text', { x: cx, y: 100, 'text-anchor': 'middle', class: 'step-kind' });
      kindTag.textContent = row.kind === 'Baseline' ? 'base' : row.kind.slice(0, 4).toLowerCase();
      card.appendChild(kindTag);
    });
    scroll.appendChild(card);
    container.appendChild(scroll);

    const bars = svgEl('svg', {
      width: BARS_W,
      height: BARS_H,
      viewBox: `0 0 ${BARS_W} ${BARS_H}`,
      'data-role': 'metric-bars',
    });
    METRICS.forEach((metric, m) => {
      const group = svgEl('g', { 'data-metric': metric.key });
      const x0 = 30 + m * 100;
      const pairs: Array<{ cls: string; row: HistoryRow | undefined; color: string; dx: number }> = [
        { cls: 'current', row: selected, color: CURRENT_TEAL, dx: 0 },
        { cls: 'best', row: best, color: BEST_BROWN, dx: 30 },
      ];
      for (const { cls, row, color, dx } of pairs) {
        if (!row) continue;
        const mean = row[`${metric.key}_mean`];
        const std = row[`${metric.key}_std`];
        const h = mean * BAR_SCALE;
        group.appendChild(
          svgEl('rect', {
            class: `bar ${cls}`,
            x: x0 + dx,
            y: BASE_Y - h,
            width: 24,
            height: Math.max(h, 0.5),
            fill: color,
          }),
        );
        const lo = BASE_Y - Math.min(1, mean + std) * BAR_SCALE;
        const hi = BASE_Y - Math.max(0, mean - std) * BAR_SCALE;
        group.appendChild(
          svgEl('line', {
            class: 'whisker',
            x1: x0 + dx + 12,
            y1: lo,
            x2: x0 + dx + 12,
            y2: hi,
            stroke: ERROR_BLACK,
            'stroke-width': 1.5,
          }),
        );
        const value = svgEl('text', {
          x: x0 + dx + 12,
          y: BASE_Y + 14,
          'text-anchor': 'middle',
          class: 'bar-value',
        });
        value.textContent = fmt(mean, 3);
        group.appendChild(value);
      }
      const label = svgEl('text', {
        x: x0 + 27,
        y: BASE_Y + 28,
        'text-anchor': 'middle',
        class: 'metric-label',
      });
      label.textContent = metric.label;
      group.appendChild(label);
      bars.appendChild(group);
    });
    container.appendChild(bars);

    const footer = htmlEl('div', { class: 'tracker-footer' });
    const summary = htmlEl('span', { 'data-role': 'best-summary' });
    summary.textContent = best
      ? `best #${best.ordinal} (combined ${fmt(best.combined)}), viewing #${selected?.ordinal ?? 0}`
      : 'no history';
    footer.appendChild(summary);
    const exportButton = htmlEl('button', { 'data-role': 'export' }, 'export best dataset');
    exportButton.disabled = view.locked;
    exportButton.addEventListener('click', () => hooks.onExport());
    footer.appendChild(exportButton);
    container.appendChild(footer);
  };

  draw();
}
