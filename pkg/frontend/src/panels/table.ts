// Importance table: one row per feature, one red-to-green cell per
// technique plus the average, sortable by clicking a column header.
// The scored table only covers active features, so excluded ones are
// appended from the feature-state list with empty cells under a
// black-and-white stripe; generation candidates (scored but not yet part
// of the dataset) render dark gray with an adopt control instead of a
// toggle.

import { heatColor } from '../colors.js';
import {
  TECHNIQUES,
  type FeatureState,
  type ImportanceTable,
  type TechniqueName,
} from '../types.js';
import { fmt, htmlEl } from '../util.js';

export type TableHooks = {
  onInclude: (feature: string) => void;
  onExclude: (feature: string) => void;
  onAdopt: (name: string) => void;
};

export type TableView = {
  table: ImportanceTable;
  // every feature the session knows, active or not
  states: FeatureState[];
  // names present only as generation candidates
  candidates: string[];
  // true while a mutation is in flight: every control disabled
  locked: boolean;
};

type SortKey = TechniqueName | 'average';

type Row = {
  name: string;
  kind: string;
  active: boolean;
  candidate: boolean;
  // index into the score arrays, or null for unscored (excluded) features
  scored: number | null;
};

const COLUMNS: Array<{ key: SortKey; label: string }> = [
  ...TECHNIQUES.map((t) => ({ key: t as SortKey, label: t })),
  { key: 'average', label: 'average' },
];

function scoresFor(table: ImportanceTable, key: SortKey): number[] {
  return key === 'average' ? table.average : table.techniques[key].normalized;
}

export function renderImportanceTable(
  container: HTMLElement,
  view: TableView,
  hooks: TableHooks,
): void {
  container.textContent = '';
  container.classList.add('panel', 'importance');
  container.appendChild(htmlEl('h2', {}, 'Importance'));

  const { table } = view;
  const candidateSet = new Set(view.candidates);
  const kinds = new Map(view.states.map((s) => [s.name, s.kind]));
  const scoredNames = new Set(table.features);

  const rows: Row[] = table.features.map((name, i) => ({
    name,
    kind: kinds.get(name) ?? 'generated',
    active: table.active[i],
    candidate: candidateSet.has(name),
    scored: i,
  }));
  for (const st of view.states) {
    if (!st.active && !scoredNames.has(st.name)) {
      rows.push({ name: st.name, kind: st.kind, active: false, candidate: false, scored: null });
    }
  }

  const tableEl = htmlEl('table', { 'data-role': 'importance-table' });
  const thead = htmlEl('thead');
  const headRow = htmlEl('tr');
  headRow.appendChild(htmlEl('th', {}, 'feature'));
  const headerCells = new Map<SortKey, HTMLTableCellElement>();
  for (const col of COLUMNS) {
    const th = htmlEl('th', { 'data-technique': col.key }, col.label);
    headerCells.set(col.key, th);
    headRow.appendChild(th);
  }
  headRow.appendChild(htmlEl('th', {}, ''));
  thead.appendChild(headRow);
  tableEl.appendChild(thead);
  const tbody = htmlEl('tbody');
  tableEl.appendChild(tbody);
  container.appendChild(tableEl);

  const renderRows = (sortKey: SortKey) => {
    for (const [key, th] of headerCells) th.classList.toggle('sorted', key === sortKey);
    tbody.textContent = '';

    const keyScores = scoresFor(table, sortKey);
    const score = (row: Row) => (row.scored === null ? -Infinity : keyScores[row.scored]);
    const order = rows
      .map((_, i) => i)
      .sort((a, b) => score(rows[b]) - score(rows[a]) || a - b);

    for (const i of order) {
      const row = rows[i];
      const tr = htmlEl('tr', { 'data-feature': row.name });
      if (row.candidate) tr.classList.add('candidate');
      else if (!row.active) tr.classList.add('excluded');

      const nameCell = htmlEl('td', { class: 'feature-name' }, row.name);
      if (row.kind !== 'original') {
        nameCell.appendChild(htmlEl('span', { class: 'kind-tag' }, row.kind));
      }
      tr.appendChild(nameCell);

      for (const col of COLUMNS) {
        if (row.scored === null) {
          tr.appendChild(htmlEl('td', { class: 'heat empty', title: 'not scored' }, ''));
          continue;
        }
        const raw =
          col.key === 'average'
            ? table.average[row.scored]
            : table.techniques[col.key].raw[row.scored];
        const normalized = scoresFor(table, col.key)[row.scored];
        const td = htmlEl('td', { class: 'heat', title: String(raw) }, fmt(raw));
        td.style.background = heatColor(normalized);
        tr.appendChild(td);
      }

      const actions = htmlEl('td', { class: 'row-actions' });
      if (row.candidate) {
        const adopt = htmlEl('button', { 'data-role': 'adopt' }, 'adopt');
        adopt.disabled = view.locked;
        adopt.addEventListener('click', () => hooks.onAdopt(row.name));
        actions.appendChild(adopt);
      } else {
        const toggle = htmlEl(
          'button',
          { 'data-role': 'toggle' },
          row.active ? 'exclude' : 'include',
        );
        toggle.disabled = view.locked;
        toggle.addEventListener('click', () =>
          row.active ? hooks.onExclude(row.name) : hooks.onInclude(row.name),
        );
        actions.appendChild(toggle);
      }
      tr.appendChild(actions);
      tbody.appendChild(tr);
    }
  };

  for (const [key, th] of headerCells) {
    th.addEventListener('click', () => renderRows(key));
  }
  renderRows('average');
}
