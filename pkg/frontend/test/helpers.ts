// Builders for the payload shapes the panels consume, plus a fresh
// container attached to the document so event dispatch works.

import type {
  FeatureStatistics,
  HistoryRow,
  ImportanceTable,
  ProbabilitiesPayload,
  TechniqueScores,
} from '../src/types.js';

export function host(): HTMLElement {
  const div = document.createElement('div');
  document.body.appendChild(div);
  return div;
}

export function tech(values: number[]): TechniqueScores {
  return { raw: values, normalized: values };
}

export function makeTable(over: Partial<ImportanceTable> = {}): ImportanceTable {
  const base: ImportanceTable = {
    features: ['a', 'b', 'c'],
    active: [true, true, true],
    techniques: {
      univariate: tech([0.1, 0.9, 0.2]),
      impurity: tech([0.5, 0.4, 0.6]),
      permutation: tech([0.3, 0.2, 0.8]),
      accuracy: tech([0.6, 0.1, 0.7]),
      ranking: tech([0.4, 0.3, 0.9]),
    },
    average: [0.8, 0.5, 0.9],
    order: ['c', 'a', 'b'],
  };
  return { ...base, ...over };
}

export function makeStat(over: Partial<FeatureStatistics> = {}): FeatureStatistics {
  return {
    target_cor: 0.5,
    degenerate: false,
    per_class_cor: { hi: 0.4, lo: 0.2 },
    mi_target: 0.3,
    vif: 1.2,
    vif_state: 'low',
    pairwise_cor: { other: 0.1 },
    transform_impact: {
      deltas: { l2: -0.05, p2: 0.04 },
      direction: 'decreases',
      inapplicable: ['i'],
    },
    ...over,
  };
}

export function makeProbabilities(over: Partial<ProbabilitiesPayload> = {}): ProbabilitiesPayload {
  return {
    probabilities: [0.1, 0.3, 0.6, 0.9],
    assignment: ['Worst', 'Bad', 'Good', 'Best'],
    counts: { Worst: 1, Bad: 1, Good: 1, Best: 1 },
    thresholds: { low: 25, fixed: 50, high: 75 },
    ...over,
  };
}

export function makeHistoryRow(over: Partial<HistoryRow> = {}): HistoryRow {
  return {
    ordinal: 0,
    kind: 'Baseline',
    subject: '',
    accuracy_mean: 0.9,
    accuracy_std: 0.02,
    wprecision_mean: 0.88,
    wprecision_std: 0.03,
    wrecall_mean: 0.9,
    wrecall_std: 0.02,
    combined: 2.61,
    became_best: true,
    n_active: 11,
    ...over,
  };
}

export function mouse(type: string, init: MouseEventInit = {}): MouseEvent {
  return new MouseEvent(type, { bubbles: true, cancelable: true, ...init });
}

export function click(el: Element): void {
  el.dispatchEvent(mouse('click'));
}

export async function flush(): Promise<void> {
  await new Promise((resolve) => setTimeout(resolve, 0));
}
