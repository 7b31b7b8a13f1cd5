// Global heaviness table: sortable/paged through API params, columns split
// into a "from upstream" and an "on downstream" group, rows with
// adjusted_hc >= 30 highlighted red.

import { cell, escapeHtml } from './format.js';
import type { PackagesPage, StatsRow } from './types.js';

export const RED_ADJUSTED_HC = 30;

export interface ColumnSpec {
  key: keyof StatsRow;
  label: string;
  group: 'identity' | 'upstream' | 'downstream';
}

export const COLUMNS: ColumnSpec[] = [
  { key: 'name', label: 'Package', group: 'identity' },
  { key: 'repository', label: 'Repo', group: 'identity' },
  { key: 'n_strong', label: 'Strong deps', group: 'upstream' },
  { key: 'k_p', label: 'Parents', group: 'upstream' },
  { key: 'mhp', label: 'Max from parents', group: 'upstream' },
  { key: 'adjusted_mhp', label: 'Adj. max', group: 'upstream' },
  { key: 'mcohp', label: 'Max co-pair', group: 'upstream' },
  { key: 'depth', label: 'Depth', group: 'upstream' },
  { key: 'gini_from_parents', label: 'Gini (parents)', group: 'upstream' },
  { key: 'k_c', label: 'Children', group: 'downstream' },
  { key: 'hc', label: 'On children', group: 'downstream' },
  { key: 'adjusted_hc', label: 'Adj. on children', group: 'downstream' },
  { key: 'k_d', label: 'Downstream', group: 'downstream' },
  { key: 'hd', label: 'On downstream', group: 'downstream' },
  { key: 'k_id', label: 'Indirect', group: 'downstream' },
  { key: 'hid', label: 'On indirect', group: 'downstream' },
  { key: 'adjusted_hid', label: 'Adj. on indirect', group: 'downstream' },
  { key: 'total_downstream', label: 'Total downstream', group: 'downstream' },
];

export function isRedRow(row: Pick<StatsRow, 'adjusted_hc'>): boolean {
  return row.adjusted_hc !== null && row.adjusted_hc >= RED_ADJUSTED_HC;
}

export function rowClasses(row: StatsRow): string {
  return isRedRow(row) ? 'pkg-row red' : 'pkg-row';
}

function headerCells(sort: string, dir: 'asc' | 'desc'): string {
  return COLUMNS.map((col) => {
    const active = col.key === sort ? ` sorted ${dir}` : '';
    return `<th class="group-${col.group}${active}" data-sort="${col.key}">` +
      `${escapeHtml(col.label)}</th>`;
  }).join('');
}

function groupHeader(): string {
  const identity = COLUMNS.filter((c) => c.group === 'identity').length;
  const upstream = COLUMNS.filter((c) => c.group === 'upstream').length;
  const downstream = COLUMNS.filter((c) => c.group === 'downstream').length;
  return `<tr class="col-groups">` +
    `<th colspan="${identity}"></th>` +
    `<th colspan="${upstream}" class="group-upstream">From upstream</th>` +
    `<th colspan="${downstream}" class="group-downstream">On downstream</th>` +
    `</tr>`;
}

export function renderTable(page: PackagesPage): string {
  if (page.total === 0) {
    return '<p class="empty-state">No packages in this snapshot.</p>';
  }
  const rows = page.rows.map((row) => {
    const tds = COLUMNS.map((col) =>
      `<td class="group-${col.group}">${cellFor(row, col.key)}</td>`).join('');
    return `<tr class="${rowClasses(row)}" data-package="${escapeHtml(row.name)}">${tds}</tr>`;
  }).join('');
  const pages = Math.max(1, Math.ceil(page.total / page.per_page));
  return `<table class="global-table">` +
    `<thead>${groupHeader()}<tr>${headerCells(page.sort, page.dir)}</tr></thead>` +
    `<tbody>${rows}</tbody></table>` +
    `<nav class="pager" data-pages="${pages}">` +
    `<button data-page="${page.page - 1}" ${page.page <= 1 ? 'disabled' : ''}>Prev</button>` +
    `<span>page ${page.page} / ${pages} (${page.total} packages)</span>` +
    `<button data-page="${page.page + 1}" ${page.page >= pages ? 'disabled' : ''}>Next</button>` +
    `</nav>`;
}

function cellFor(row: StatsRow, key: keyof StatsRow): string {
  const value = row[key];
  if (key === 'name') {
    return `<a href="#/package/${encodeURIComponent(row.name)}">${escapeHtml(row.name)}</a>`;
  }
  if (Array.isArray(value)) return escapeHtml(value.join(', '));
  return cell(value as number | string | null);
}
