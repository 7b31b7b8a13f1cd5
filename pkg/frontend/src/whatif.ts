// What-if demotion simulator: toggle strong parents on and off; every
// change posts the full selection to /whatif and the displayed numbers are
// the service's answer verbatim, so each next toggle is informed by the
// previous result.

import type { ApiClient } from './api.js';
import { escapeHtml } from './format.js';
import type { PackageDetail, WhatIfResponse } from './types.js';

export interface WhatIfState {
  packageName: string;
  parents: string[];            // valid toggle targets: the strong parents
  selected: Set<string>;
  baseline: number;             // strong-dependency count before any demotion
  result: WhatIfResponse | null;
  pending: boolean;
  error: string | null;
}

export function initialState(detail: PackageDetail): WhatIfState {
  return {
    packageName: detail.name,
    parents: detail.parents.map((p) => p.parent),
    selected: new Set(),
    baseline: detail.n_strong,
    result: null,
    pending: false,
    error: null,
  };
}

/** Selection is constrained to the package's strong parents by construction. */
export function toggle(state: WhatIfState, parent: string): WhatIfState {
  if (!state.parents.includes(parent)) return state;
  const selected = new Set(state.selected);
  if (selected.has(parent)) {
    selected.delete(parent);
  } else {
    selected.add(parent);
  }
  return { ...state, selected };
}

export async function refresh(
  state: WhatIfState, api: ApiClient,
): Promise<WhatIfState> {
  try {
    const result = await api.latest(`whatif:${state.packageName}`, () =>
      api.whatIf(state.packageName, [...state.selected].sort()));
    if (result === null) return state;          // a newer toggle superseded us
    return { ...state, result, pending: false, error: null };
  } catch (err) {
    return { ...state, result: null, pending: false, error: String(err) };
  }
}

/** The headline the panel shows, e.g. "5 → 3". */
export function headline(state: WhatIfState): string {
  const after = state.result ? state.result.new_count : state.baseline;
  return `${state.baseline} → ${after}`;
}

export function removedSet(state: WhatIfState): string[] {
  return state.result ? state.result.reduced : [];
}

export function render(state: WhatIfState): string {
  const toggles = state.parents.map((parent) => {
    const on = state.selected.has(parent);
    return `<label class="whatif-toggle">` +
      `<input type="checkbox" data-parent="${escapeHtml(parent)}" ${on ? 'checked' : ''}>` +
      ` ${escapeHtml(parent)}</label>`;
  }).join('');
  const removed = removedSet(state);
  const removedText = removed.length
    ? `removes {${removed.map(escapeHtml).join(', ')}}`
    : 'removes nothing';
  return `<section class="whatif-panel">` +
    `<h3>What if these became weak parents?</h3>` +
    `<div class="whatif-toggles">${toggles || '<em>no strong parents</em>'}</div>` +
    `<p class="whatif-headline" data-testid="whatif-headline">` +
    `<strong>${headline(state)}</strong>, ${removedText}</p>` +
    (state.error ? `<p class="error">${escapeHtml(state.error)}</p>` : '') +
    `</section>`;
}
