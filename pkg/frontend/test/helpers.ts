import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import { ApiClient, FetchLike } from '../src/api.js';

const here = dirname(fileURLToPath(import.meta.url));

export function fixture<T>(name: string): T {
  const raw = readFileSync(join(here, 'fixtures', 'g1', `${name}.json`), 'utf-8');
  return JSON.parse(raw) as T;
}

/**
 * Fetch stub replaying recorded service responses. What-if requests are
 * routed by their demote subset so the panel exercises the exact payloads
 * the real service produced for fixture G1.
 */
export function recordedFetch(log?: { url: string; body?: unknown }[]): FetchLike {
  return async (url: string, init?: RequestInit) => {
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    log?.push({ url, body });
    let payload: unknown;
    if (url.endsWith('/whatif')) {
      const demote: string[] = [...(body.demote ?? [])].sort();
      payload = fixture(`whatif_P_${demote.join('-') || 'none'}`);
    } else if (url.includes('/package/P/upstream')) {
      payload = fixture('upstream_P');
    } else if (url.includes('/package/C/downstream-graph')) {
      payload = fixture('downstream_graph_C_g2');
    } else if (url.includes('/package/C/downstream')) {
      payload = fixture('downstream_C');
    } else if (url.includes('/package/P')) {
      payload = fixture('package_P');
    } else if (url.includes('/package/C')) {
      payload = fixture('package_C');
    } else if (url.includes('/packages')) {
      payload = fixture('packages');
    } else {
      return new Response(JSON.stringify({ error: `unrecorded ${url}` }), { status: 404 });
    }
    return new Response(JSON.stringify(payload), {
      status: 200,
      headers: { 'Content-Type': 'application/json' },
    });
  };
}

export function recordedClient(log?: { url: string; body?: unknown }[]): ApiClient {
  return new ApiClient('', recordedFetch(log));
}
