// Application bootstrap: fetch every read payload, render the five
// panels, and wire their hooks through the mutation gate so the server
// never sees two overlapping mutations from this client.

import { api } from './api.js';
import { renderDataspace } from './panels/dataspace.js';
import { renderGraph } from './panels/graph.js';
import { renderImportanceTable } from './panels/table.js';
import { renderRadial } from './panels/radial.js';
import { renderTracker } from './panels/tracker.js';
import { MutationGate } from './state.js';
import type {
  GeneratePayload,
  GraphPayload,
  ImportancePayload,
  ImportanceTable,
  LogPayload,
  ProbabilitiesPayload,
  SessionSummary,
  StatisticsPayload,
} from './types.js';

type AppData = {
  session: SessionSummary;
  probabilities: ProbabilitiesPayload;
  importance: ImportancePayload;
  statistics: StatisticsPayload;
  graph: GraphPayload;
  log: LogPayload;
};

type Pending = {
  sources: string[];
  table: ImportanceTable;
  candidates: string[];
};

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

export async function boot(): Promise<void> {
  const gate = new MutationGate();
  let data: AppData | null = null;
  let pending: Pending | null = null;
  let graphSlice = 'All';
  let minCor = 0.6;

  const status = el('status');
  const note = (text: string) => {
    status.textContent = text;
    status.hidden = text === '';
  };

  const refreshAll = async () => {
    const [session, probabilities, importance, statistics, graph, log] = await Promise.all([
      api.session(),
      api.probabilities(),
      api.importance(),
      api.statistics(),
      api.graph(graphSlice, minCor),
      api.log(),
    ]);
    data = { session, probabilities, importance, statistics, graph, log };
    pending = null;
    renderAll();
  };

  const refreshGraph = async () => {
    if (!data) return;
    data.graph = await api.graph(graphSlice, minCor);
    renderGraphPanel();
  };

  const mutate = (run: () => Promise<unknown>, refresh: () => Promise<void> = refreshAll) => {
    void gate
      .run(run, refresh)
      .then((ran) => {
        if (!ran) note('another change is still running');
      })
      .catch((err) => note(String(err)));
  };

  const renderGraphPanel = () => {
    if (!data) return;
    renderGraph(
      el('graph'),
      {
        graph: data.graph,
        stats: data.statistics[graphSlice] ?? null,
        classNames: data.session.class_names,
        locked: gate.busy,
      },
      {
        onMinCor: (value) => {
          minCor = value;
          void refreshGraph().catch((err) => note(String(err)));
        },
        onSliceChange: (slice) => {
          graphSlice = slice;
          void refreshGraph().catch((err) => note(String(err)));
        },
        onTransforms: (feature) => api.transforms(feature),
        onTransform: (feature, id) => mutate(() => api.transform(feature, id)),
        onGenerate: (sources) =>
          mutate(
            async () => {
              const result = (await api.generate(sources)) as GeneratePayload;
              const fresh = new Set(result.candidates.filter((c) => c.valid).map((c) => c.name));
              pending = {
                sources,
                table: result.table,
                candidates: result.table.features.filter((f) => fresh.has(f)),
              };
            },
            async () => renderAll(),
          ),
      },
    );
  };

  const renderAll = () => {
    if (!data) return;
    const s = data.session;
    const classes = s.class_names.map((c, i) => `${c} ${s.class_counts[i]}`).join(' / ');
    el('summary').textContent =
      `${s.n_rows} rows, ${s.n_features} features (${s.n_active} active), ` +
      `classes ${classes}, ${s.n_actions} actions`;

    renderDataspace(el('dataspace'), data.probabilities, {
      onThresholds: (low, high) => mutate(() => api.setThresholds(low, high)),
    });

    renderImportanceTable(
      el('table'),
      {
        table: pending ? pending.table : data.importance.table,
        states: data.importance.features,
        candidates: pending ? pending.candidates : [],
        locked: gate.busy,
      },
      {
        onInclude: (f) => mutate(() => api.include(f)),
        onExclude: (f) => mutate(() => api.exclude(f)),
        onAdopt: (name) => {
          if (!pending) return;
          const sources = pending.sources;
          mutate(() => api.adopt(sources, name));
        },
      },
    );

    renderRadial(el('radial'), data.statistics, data.probabilities.counts);
    renderGraphPanel();

    renderTracker(
      el('tracker'),
      { history: data.log.history, bestOrdinal: s.best.ordinal, locked: gate.busy },
      {
        onExport: () =>
          mutate(async () => {
            await api.exportBest('exports');
            note('best dataset exported to exports/');
          }),
      },
    );
  };

  gate.onChange(() => renderAll());
  note('loading...');
  await refreshAll();
  note('');
}

// skip auto-boot under test: the suite drives panels directly
if (typeof document !== 'undefined' && document.getElementById('dataspace')) {
  void boot().catch((err) => {
    const status = document.getElementById('status');
    if (status) {
      status.textContent = String(err);
      status.hidden = false;
    }
  });
}
