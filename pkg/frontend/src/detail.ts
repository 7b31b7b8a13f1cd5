// Per-package detail: metric summary, upstream paths with h_u, downstream
// paths filtered by a depth range, plus the what-if panel and graph mounts.

import { cell, escapeHtml, pathArrow } from './format.js';
import { isRedRow } from './table.js';
import type {
  DownstreamResponse,
  PackageDetail,
  UpstreamResponse,
} from './types.js';

export interface DepthRange {
  min?: number;
  max?: number;
}

export function filterLabel(range: DepthRange): string {
  if (range.min === undefined && range.max === undefined) return 'all depths';
  if (range.max === undefined) return `depth ≥ ${range.min}`;
  if (range.min === undefined) return `depth ≤ ${range.max}`;
  return `depth ${range.min}–${range.max}`;
}

export function renderSummaryCard(detail: PackageDetail): string {
  const badge = detail.reducible
    ? '<span class="badge reducible">reducible</span>'
    : '';
  const red = isRedRow(detail) ? ' red' : '';
  const pairs: [string, number | string | null][] = [
    ['Strong dependencies', detail.n_strong],
    ['Parents', detail.k_p],
    ['Max heaviness from parents', detail.mhp],
    ['Max co-heaviness pair', detail.mcohp_pair ? detail.mcohp_pair.join(' + ') : null],
    ['Children', detail.k_c],
    ['Heaviness on children', detail.hc],
    ['Adjusted (children)', detail.adjusted_hc],
    ['Downstream', detail.k_d],
    ['Heaviness on downstream', detail.hd],
    ['Indirect downstream', detail.k_id],
    ['Heaviness on indirect', detail.hid],
    ['Total downstream heaviness', detail.total_downstream],
    ['Depth', detail.depth],
  ];
  const dl = pairs.map(([label, value]) =>
    `<div><dt>${escapeHtml(label)}</dt><dd>${cell(value)}</dd></div>`).join('');
  return `<header class="detail-header${red}">` +
    `<h2>${escapeHtml(detail.name)} <small>${escapeHtml(detail.repository)}</small> ${badge}</h2>` +
    `<dl class="metric-grid">${dl}</dl></header>`;
}

export function renderUpstreamTable(upstream: UpstreamResponse): string {
  if (!upstream.entries.length) {
    return '<p class="empty-state">No upstream packages.</p>';
  }
  const rows = upstream.entries.map((e) =>
    `<tr><td>${escapeHtml(e.package)}</td><td>${e.distance}</td>` +
    `<td>${e.h_u}</td><td class="path">${pathArrow(e.path)}</td></tr>`).join('');
  return `<table class="paths-table"><thead>` +
    `<tr><th>Upstream</th><th>Distance</th><th>h_u</th><th>Shortest path</th></tr>` +
    `</thead><tbody>${rows}</tbody></table>`;
}

export function renderDownstreamTable(
  downstream: DownstreamResponse, range: DepthRange,
): string {
  if (!downstream.entries.length) {
    return `<p class="empty-state">No downstream packages (${filterLabel(range)}).</p>`;
  }
  const rows = downstream.entries.map((e) =>
    `<tr><td>${escapeHtml(e.package)}</td><td>${e.depth}</td>` +
    `<td>${e.h_u}</td><td class="path">${pathArrow(e.path)}</td></tr>`).join('');
  return `<table class="paths-table"><thead>` +
    `<tr><th>Downstream</th><th>Depth</th><th>h_u</th><th>Shortest path</th></tr>` +
    `</thead><tbody>${rows}</tbody></table>`;
}

export function renderDepthSlider(maxDepth: number, range: DepthRange): string {
  const min = range.min ?? 1;
  const max = range.max ?? maxDepth;
  return `<div class="depth-slider">` +
    `<label>min depth <input type="range" data-role="min-depth" min="1" ` +
    `max="${maxDepth}" value="${min}"> <output>${min}</output></label>` +
    `<label>max depth <input type="range" data-role="max-depth" min="1" ` +
    `max="${maxDepth}" value="${max}"> <output>${max}</output></label>` +
    `<span class="depth-label">${filterLabel(range)}</span></div>`;
}
