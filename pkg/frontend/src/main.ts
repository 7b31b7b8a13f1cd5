// SPA bootstrap: hash routing between the global table and package detail,
// event wiring for sorting, paging, depth filtering, what-if toggles and
// leaf-group expansion.

import { ApiClient, ApiError } from './api.js';
import {
  DepthRange,
  renderDepthSlider,
  renderDownstreamTable,
  renderSummaryCard,
  renderUpstreamTable,
} from './detail.js';
import { GraphViewState, emptyViewState, expandGroup, renderSvg } from './graph.js';
import { renderTable } from './table.js';
import * as whatif from './whatif.js';
import type { GraphDoc } from './types.js';

interface TableState {
  sort: string;
  dir: 'asc' | 'desc';
  page: number;
}

const api = new ApiClient('');
const root = document.getElementById('app')!;

const tableState: TableState = { sort: 'adjusted_hc', dir: 'desc', page: 1 };

function errorBanner(err: unknown, retry: string): string {
  const message = err instanceof ApiError ? err.message : 'service unreachable';
  return `<div class="banner error">${message} ` +
    `<button data-retry="${retry}">Retry</button></div>`;
}

async function showTable(): Promise<void> {
  root.innerHTML = '<p class="loading">Loading packages…</p>';
  try {
    const page = await api.latest('table', () => api.packages({
      sort: tableState.sort, dir: tableState.dir,
      page: tableState.page, per_page: 100,
    }));
    if (page === null) return;
    root.innerHTML = `<h1>Dependency heaviness explorer</h1>${renderTable(page)}`;
    root.querySelectorAll('th[data-sort]').forEach((th) => {
      th.addEventListener('click', () => {
        const key = (th as HTMLElement).dataset.sort!;
        if (tableState.sort === key) {
          tableState.dir = tableState.dir === 'asc' ? 'desc' : 'asc';
        } else {
          tableState.sort = key;
          tableState.dir = 'desc';
        }
        tableState.page = 1;
        void showTable();
      });
    });
    root.querySelectorAll('.pager button[data-page]').forEach((btn) => {
      btn.addEventListener('click', () => {
        const target = Number((btn as HTMLElement).dataset.page);
        if (target >= 1 && !(btn as HTMLButtonElement).disabled) {
          tableState.page = target;
          void showTable();
        }
      });
    });
  } catch (err) {
    root.innerHTML = errorBanner(err, 'table');
    wireRetry();
  }
}

async function showDetail(name: string): Promise<void> {
  root.innerHTML = `<p class="loading">Loading ${name}…</p>`;
  let detail;
  try {
    detail = await api.packageDetail(name);
  } catch (err) {
    if (err instanceof ApiError && err.status === 404) {
      root.innerHTML = `<div class="banner error">Package not found: ${name} ` +
        `<a href="#/">back to the table</a></div>`;
      return;
    }
    root.innerHTML = errorBanner(err, `detail:${name}`);
    wireRetry();
    return;
  }

  let wiState = whatif.initialState(detail);
  const range: DepthRange = {};
  let graphState: GraphViewState = emptyViewState();
  let graphDoc: GraphDoc | null = null;

  root.innerHTML =
    `<nav><a href="#/">← all packages</a></nav>` +
    renderSummaryCard(detail) +
    `<div id="whatif-mount"></div>` +
    `<section><h3>Upstream paths</h3><div id="upstream-mount">loading…</div>` +
    `<div id="upstream-graph-mount"></div></section>` +
    `<section><h3>Downstream paths</h3><div id="depth-mount"></div>` +
    `<div id="downstream-mount">loading…</div></section>` +
    `<section><h3>Downstream graph</h3><div id="graph-mount">loading…</div></section>`;

  const whatifMount = document.getElementById('whatif-mount')!;
  const redrawWhatif = () => {
    whatifMount.innerHTML = whatif.render(wiState);
    whatifMount.querySelectorAll('input[data-parent]').forEach((box) => {
      box.addEventListener('change', () => {
        wiState = whatif.toggle(wiState, (box as HTMLElement).dataset.parent!);
        void whatif.refresh(wiState, api).then((next) => {
          wiState = next;
          redrawWhatif();
        });
      });
    });
  };
  redrawWhatif();

  void api.upstream(name).then((up) => {
    document.getElementById('upstream-mount')!.innerHTML = renderUpstreamTable(up);
    if (up.entries.length) {
      document.getElementById('upstream-graph-mount')!.innerHTML =
        renderSvg(up.graph, emptyViewState());
    }
  });

  const maxDepth = Math.max(1, detail.depth + detail.k_d);
  const redrawDownstream = async () => {
    const mount = document.getElementById('downstream-mount')!;
    const rows = await api.latest(`down:${name}`, () =>
      api.downstream(name, range.min, range.max));
    if (rows !== null) mount.innerHTML = renderDownstreamTable(rows, range);
    const depthMount = document.getElementById('depth-mount')!;
    depthMount.innerHTML = renderDepthSlider(maxDepth, range);
    depthMount.querySelectorAll('input[type=range]').forEach((slider) => {
      slider.addEventListener('change', () => {
        const value = Number((slider as HTMLInputElement).value);
        if ((slider as HTMLElement).dataset.role === 'min-depth') {
          range.min = value;
        } else {
          range.max = value;
        }
        void redrawDownstream();
        void redrawGraph();
      });
    });
  };
  void redrawDownstream();

  const redrawGraph = async () => {
    const doc = await api.latest(`graph:${name}`, () =>
      api.downstreamGraph(name, range.min, range.max));
    if (doc === null) return;
    graphDoc = doc;
    graphState = emptyViewState();
    paintGraph();
  };
  const paintGraph = () => {
    const mount = document.getElementById('graph-mount')!;
    if (!graphDoc) return;
    mount.innerHTML = renderSvg(graphDoc, graphState);
    mount.querySelectorAll('g[data-expandable]').forEach((group) => {
      group.addEventListener('click', () => {
        graphState = expandGroup(graphState, (group as SVGGElement).dataset.name!);
        paintGraph();
      });
    });
  };
  void redrawGraph();
}

function wireRetry(): void {
  root.querySelectorAll('button[data-retry]').forEach((btn) => {
    btn.addEventListener('click', () => void route());
  });
}

async function route(): Promise<void> {
  const hash = window.location.hash;
  const detail = hash.match(/^#\/package\/(.+)$/);
  if (detail) {
    await showDetail(decodeURIComponent(detail[1]));
  } else {
    await showTable();
  }
}

window.addEventListener('hashchange', () => void route());
void route();
