// Shared color conventions. Heatmap cells run red (low) to green (high),
// mutual information runs light to dark blue, metric bars are teal for the
// current state and brown for the best one.

export const HEAT_LOW = '#c0392b';
export const HEAT_MID = '#f5f0e6';
export const HEAT_HIGH = '#1e8449';

export const MI_LIGHT = '#d6e6f5';
export const MI_DARK = '#1a4d80';

export const CURRENT_TEAL = '#1f8a8a';
export const BEST_BROWN = '#8a5a2b';
export const ERROR_BLACK = '#111111';

export const CANDIDATE_GRAY = '#4a4a4a';
export const THRESHOLD_GRAY = '#888888';

export const SLICE_COLORS: Record<string, string> = {
  Worst: '#b03a2e',
  Bad: '#d68910',
  Good: '#7dcea0',
  Best: '#1e8449',
};

const IMPACT_DECREASE = '#1e8449';
const IMPACT_INCREASE = '#b03a2e';

function channel(a: number, b: number, t: number): number {
  return Math.round(a + (b - a) * t);
}

function hexToRgb(hex: string): [number, number, number] {
  return [
    parseInt(hex.slice(1, 3), 16),
    parseInt(hex.slice(3, 5), 16),
    parseInt(hex.slice(5, 7), 16),
  ];
}

function mix(from: string, to: string, t: number): string {
  const a = hexToRgb(from);
  const b = hexToRgb(to);
  const c = [channel(a[0], b[0], t), channel(a[1], b[1], t), channel(a[2], b[2], t)];
  return `rgb(${c[0]}, ${c[1]}, ${c[2]})`;
}

/** Red-green heatmap color for a value already normalized to [0, 1]. */
export function heatColor(normalized: number): string {
  const t = Math.max(0, Math.min(1, normalized));
  return t < 0.5 ? mix(HEAT_LOW, HEAT_MID, t * 2) : mix(HEAT_MID, HEAT_HIGH, (t - 0.5) * 2);
}

/** Light-to-dark blue for mutual information in [0, 1]. */
export function miColor(value: number): string {
  return mix(MI_LIGHT, MI_DARK, Math.max(0, Math.min(1, value)));
}

/** Green for a correlation decrease, red for an increase, gray otherwise. */
export function impactColor(delta: number): string {
  if (delta < 0) return IMPACT_DECREASE;
  if (delta > 0) return IMPACT_INCREASE;
  return THRESHOLD_GRAY;
}
