// Mirrors of the JSON payloads served by the API. The UI renders these
// verbatim; nothing is recomputed client-side.

export type Thresholds = {
  low: number;
  fixed: number;
  high: number;
};

export type SliceName = 'Worst' | 'Bad' | 'Good' | 'Best';

export type ProbabilitiesPayload = {
  probabilities: number[];
  assignment: SliceName[];
  counts: Record<SliceName, number>;
  thresholds: Thresholds;
};

export type TechniqueName =
  | 'univariate'
  | 'impurity'
  | 'permutation'
  | 'accuracy'
  | 'ranking';

export const TECHNIQUES: TechniqueName[] = [
  'univariate',
  'impurity',
  'permutation',
  'accuracy',
  'ranking',
];

export type TechniqueScores = {
  raw: number[];
  normalized: number[];
};

export type ImportanceTable = {
  features: string[];
  active: boolean[];
  techniques: Record<TechniqueName, TechniqueScores>;
  average: number[];
  order: string[];
};

export type FeatureState = {
  name: string;
  kind: string; // original | transformed | generated
  active: boolean;
};

export type ImportancePayload = {
  table: ImportanceTable;
  features: FeatureState[];
};

export type TransformImpact = {
  deltas: Record<string, number>;
  direction: 'decreases' | 'increases' | 'neutral';
  inapplicable: string[];
};

export type FeatureStatistics = {
  target_cor: number;
  degenerate: boolean;
  per_class_cor: Record<string, number>;
  mi_target: number;
  vif: number | 'inf';
  vif_state: 'severe' | 'high' | 'moderate' | 'low';
  pairwise_cor: Record<string, number>;
  transform_impact?: TransformImpact;
};

// slice name -> per-feature statistics, or null when the slice has < 2 rows
export type StatisticsPayload = Record<string, Record<string, FeatureStatistics> | null>;

export type GraphEdge = [string, string, number];

export type GraphPayload = {
  slice: string;
  min_cor: number;
  edges: GraphEdge[];
};

export type TransformEntry = {
  id: string;
  category: string;
  applicable: boolean;
  reason: string | null;
  // domain constraints such as min_gt / max_le ride along per transform
  [constraint: string]: unknown;
};

export type TransformsPayload = {
  feature: string;
  transforms: TransformEntry[];
  impact: TransformImpact | null;
};

export type HistoryRow = {
  ordinal: number;
  kind: string;
  subject: string;
  accuracy_mean: number;
  accuracy_std: number;
  wprecision_mean: number;
  wprecision_std: number;
  wrecall_mean: number;
  wrecall_std: number;
  combined: number;
  became_best: boolean;
  n_active: number;
};

export type ActionEntry = {
  ordinal: number;
  kind: string;
  subject: string;
  request: Record<string, unknown>;
  became_best: boolean;
};

export type LogPayload = {
  actions: ActionEntry[];
  history: HistoryRow[];
};

export type Report = {
  accuracy_mean: number;
  accuracy_std: number;
  wprecision_mean: number;
  wprecision_std: number;
  wrecall_mean: number;
  wrecall_std: number;
  best_params: Record<string, number>;
  fold_accuracy: number[];
  probabilities: number[];
};

export type SessionSummary = {
  n_rows: number;
  n_features: number;
  n_active: number;
  class_names: string[];
  class_counts: number[];
  thresholds: Thresholds;
  n_actions: number;
  best: { ordinal: number; combined: number };
  report: Report;
};

export type JobRecord = {
  id: string;
  status: 'running' | 'done' | 'failed';
  result?: unknown;
  error?: string;
};

export type GenerationCandidate = {
  name: string;
  sources: string[];
  operators: string[];
  valid: boolean;
  reason: string | null;
};

export type GeneratePayload = {
  candidates: GenerationCandidate[];
  table: ImportanceTable;
};
