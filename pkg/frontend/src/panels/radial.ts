// Radial slice overview: the four probability slices as inner arcs sized
// by instance count around an "All" hub, and the selected slice's features
// as a ring of nodes. Node fill encodes mutual information with the
// target, the outer arc encodes the magnitude and sign of the target
// correlation, and small satellites mark each applicable transform,
// green when it would lower the feature's strongest pairwise correlation
// and red when it would raise it. Slices holding fewer than two rows
// carry no statistics and render as "no values".

import { impactColor, miColor, SLICE_COLORS } from '../colors.js';
import type { FeatureStatistics, SliceName, StatisticsPayload } from '../types.js';
import { arcPath, clamp, fmt, htmlEl, svgEl } from '../util.js';

export type RadialHooks = {
  onSlice?: (slice: string) => void;
};

const SLICE_ORDER: SliceName[] = ['Worst', 'Bad', 'Good', 'Best'];
const W = 480;
const H = 430;
const CX = W / 2;
const CY = 210;
const HUB_R = 26;
const ARC_R0 = 32;
const ARC_R1 = 56;
const RING_R = 136;
const POSITIVE = '#1e8449';
const NEGATIVE = '#b03a2e';

type ViewState = {
  slice: string;
  scale: number;
  rotation: number;
  collapsed: boolean;
};

function strongestPairwise(stat: FeatureStatistics): number {
  let best = 0;
  for (const v of Object.values(stat.pairwise_cor)) best = Math.max(best, Math.abs(v));
  return best;
}

function nodeTitle(name: string, stat: FeatureStatistics): string {
  const perClass = Object.entries(stat.per_class_cor)
    .map(([cls, v]) => `${cls} ${fmt(v)}`)
    .join(', ');
  return (
    `${name}: target cor ${fmt(stat.target_cor)}, MI ${fmt(stat.mi_target)}, ` +
    `VIF ${stat.vif === 'inf' ? 'inf' : fmt(stat.vif as number)} (${stat.vif_state}); ` +
    `per class: ${perClass}`
  );
}

export function renderRadial(
  container: HTMLElement,
  payload: StatisticsPayload,
  counts: Record<SliceName, number>,
  hooks: RadialHooks = {},
): void {
  const state: ViewState = { slice: 'All', scale: 1, rotation: 0, collapsed: false };

  const draw = () => {
    container.textContent = '';
    container.classList.add('panel', 'radial');
    container.appendChild(htmlEl('h2', {}, `Slices: ${state.slice}`));

    const toolbar = htmlEl('div', { class: 'toolbar' });
    const button = (role: string, label: string, fn: () => void) => {
      const b = htmlEl('button', { 'data-role': role }, label);
      b.addEventListener('click', fn);
      toolbar.appendChild(b);
    };
    button('zoom-in', 'zoom in', () => {
      state.scale = clamp(state.scale + 0.2, 0.6, 2);
      draw();
    });
    button('zoom-out', 'zoom out', () => {
      state.scale = clamp(state.scale - 0.2, 0.6, 2);
      draw();
    });
    button('rotate', 'rotate', () => {
      state.rotation += Math.PI / 8;
      draw();
    });
    button('reset', 'reset', () => {
      state.scale = 1;
      state.rotation = 0;
      draw();
    });
    button('collapse', state.collapsed ? 'expand' : 'collapse', () => {
      state.collapsed = !state.collapsed;
      draw();
    });
    container.appendChild(toolbar);

    const svg = svgEl('svg', {
      width: W,
      height: H,
      viewBox: `0 0 ${W} ${H}`,
      'data-role': 'radial-svg',
    });
    container.appendChild(svg);
    const zoomed = svgEl('g', {
      transform: `translate(${CX} ${CY}) scale(${state.scale}) translate(${-CX} ${-CY})`,
    });
    svg.appendChild(zoomed);

    const selectSlice = (name: string) => {
      state.slice = name;
      draw();
      if (hooks.onSlice) hooks.onSlice(name);
    };

    // hub = All, surrounded by one arc per slice, angle ~ instance count
    const hub = svgEl('circle', {
      'data-slice': 'All',
      cx: CX,
      cy: CY,
      r: HUB_R,
      fill: '#d8d2c4',
      class: state.slice === 'All' ? 'slice-arc selected' : 'slice-arc',
    });
    hub.addEventListener('click', () => selectSlice('All'));
    zoomed.appendChild(hub);
    const hubLabel = svgEl('text', { x: CX, y: CY + 4, 'text-anchor': 'middle', class: 'hub-label' });
    hubLabel.textContent = 'All';
    zoomed.appendChild(hubLabel);

    const total = SLICE_ORDER.reduce((acc, s) => acc + (counts[s] ?? 0), 0);
    let angle = 0;
    for (const slice of SLICE_ORDER) {
      const span = total > 0 ? ((counts[slice] ?? 0) / total) * 2 * Math.PI : Math.PI / 2;
      if (span > 0) {
        const arc = svgEl('path', {
          'data-slice': slice,
          d: arcPath(CX, CY, ARC_R0, ARC_R1, angle, angle + span),
          fill: SLICE_COLORS[slice],
          stroke: '#ffffff',
          'stroke-width': 1,
          class: state.slice === slice ? 'slice-arc selected' : 'slice-arc',
        });
        const title = svgEl('title');
        title.textContent = `${slice}: ${counts[slice] ?? 0} instances`;
        arc.appendChild(title);
        arc.addEventListener('click', () => selectSlice(slice));
        zoomed.appendChild(arc);
      }
      angle += span;
    }

    const stats = payload[state.slice];
    if (!stats) {
      const empty = svgEl('text', {
        'data-role': 'no-values',
        x: CX,
        y: CY + RING_R,
        'text-anchor': 'middle',
        class: 'empty-note',
      });
      empty.textContent = 'no values';
      svg.appendChild(empty);
      return;
    }

    const names = Object.keys(stats);
    const maxMi = Math.max(0, ...names.map((n) => stats[n].mi_target));
    names.forEach((name, k) => {
      const stat = stats[name];
      const theta = state.rotation + (2 * Math.PI * k) / names.length;
      const x = CX + RING_R * Math.sin(theta);
      const y = CY - RING_R * Math.cos(theta);
      const node = svgEl('g', { 'data-feature': name, class: 'feature-node' });
      const title = svgEl('title');
      title.textContent = nodeTitle(name, stat);
      node.appendChild(title);

      if (stat.degenerate) {
        node.classList.add('degenerate');
        node.appendChild(
          svgEl('circle', {
            cx: x,
            cy: y,
            r: 13,
            fill: 'none',
            stroke: '#999999',
            'stroke-dasharray': '3 2',
          }),
        );
      } else {
        node.appendChild(
          svgEl('circle', {
            cx: x,
            cy: y,
            r: 13,
            fill: miColor(maxMi > 0 ? stat.mi_target / maxMi : 0),
            stroke: '#444444',
            'stroke-width': 0.8,
          }),
        );
        const extent = clamp(Math.abs(stat.target_cor), 0, 1) * 2 * Math.PI;
        if (extent > 0) {
          node.appendChild(
            svgEl('path', {
              class: 'cor-arc',
              d: arcPath(x, y, 15, 19, 0, Math.min(extent, 2 * Math.PI - 1e-6)),
              fill: stat.target_cor >= 0 ? POSITIVE : NEGATIVE,
            }),
          );
        }
        if (!state.collapsed && stat.transform_impact) {
          const ids = Object.keys(stat.transform_impact.deltas);
          ids.forEach((id, j) => {
            const phi = theta + (2 * Math.PI * j) / Math.max(ids.length, 1);
            const delta = stat.transform_impact!.deltas[id];
            const sat = svgEl('circle', {
              class: 'satellite',
              'data-transform': id,
              cx: x + 26 * Math.sin(phi),
              cy: y - 26 * Math.cos(phi),
              r: 3.2,
              fill: impactColor(delta),
            });
            const satTitle = svgEl('title');
            satTitle.textContent = `${id}: strongest pairwise |r| ${fmt(strongestPairwise(stat))} ${
              delta <= 0 ? 'falls' : 'rises'
            } by ${fmt(Math.abs(delta))}`;
            sat.appendChild(satTitle);
            node.appendChild(sat);
          });
        }
      }

      const label = svgEl('text', {
        x,
        y: y + 34,
        'text-anchor': 'middle',
        class: 'node-label',
      });
      label.textContent = name;
      node.appendChild(label);
      zoomed.appendChild(node);
    });
  };

  draw();
}
