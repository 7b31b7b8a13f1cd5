// Typed client over fetch. Concurrent in-flight requests are allowed;
// stale responses are discarded via per-channel sequence numbers.

import type {
  DownstreamResponse,
  GraphDoc,
  PackageDetail,
  PackagesPage,
  SummaryResponse,
  UpstreamResponse,
  WhatIfResponse,
} from './types.js';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  status: number;
  packageName?: string;

  constructor(status: number, message: string, packageName?: string) {
    super(message);
    this.status = status;
    this.packageName = packageName;
  }
}

export class ApiClient {
  private base: string;
  private fetchImpl: FetchLike;
  private sequences = new Map<string, number>();

  constructor(base = '', fetchImpl: FetchLike = (u, i) => fetch(u, i)) {
    this.base = base.replace(/\/$/, '');
    this.fetchImpl = fetchImpl;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchImpl(this.base + path, init);
    const body = await resp.json();
    if (!resp.ok) {
      throw new ApiError(resp.status, body?.error ?? resp.statusText, body?.package);
    }
    return body as T;
  }

  /** Resolves to null when a newer request on the same channel finished first. */
  async latest<T>(channel: string, run: () => Promise<T>): Promise<T | null> {
    const seq = (this.sequences.get(channel) ?? 0) + 1;
    this.sequences.set(channel, seq);
    const result = await run();
    return this.sequences.get(channel) === seq ? result : null;
  }

  packages(params: {
    sort?: string; dir?: 'asc' | 'desc'; page?: number; per_page?: number;
  } = {}): Promise<PackagesPage> {
    const query = new URLSearchParams();
    if (params.sort) query.set('sort', params.sort);
    if (params.dir) query.set('dir', params.dir);
    if (params.page) query.set('page', String(params.page));
    if (params.per_page) query.set('per_page', String(params.per_page));
    const qs = query.toString();
    return this.request<PackagesPage>(`/packages${qs ? `?${qs}` : ''}`);
  }

  packageDetail(name: string): Promise<PackageDetail> {
    return this.request<PackageDetail>(`/package/${encodeURIComponent(name)}`);
  }

  upstream(name: string): Promise<UpstreamResponse> {
    return this.request<UpstreamResponse>(`/package/${encodeURIComponent(name)}/upstream`);
  }

  downstream(name: string, minDepth?: number, maxDepth?: number): Promise<DownstreamResponse> {
    const query = new URLSearchParams();
    if (minDepth !== undefined) query.set('min_depth', String(minDepth));
    if (maxDepth !== undefined) query.set('max_depth', String(maxDepth));
    const qs = query.toString();
    return this.request<DownstreamResponse>(
      `/package/${encodeURIComponent(name)}/downstream${qs ? `?${qs}` : ''}`);
  }

  downstreamGraph(name: string, minDepth?: number, maxDepth?: number): Promise<GraphDoc> {
    const query = new URLSearchParams();
    if (minDepth !== undefined) query.set('min_depth', String(minDepth));
    if (maxDepth !== undefined) query.set('max_depth', String(maxDepth));
    const qs = query.toString();
    return this.request<GraphDoc>(
      `/package/${encodeURIComponent(name)}/downstream-graph${qs ? `?${qs}` : ''}`);
  }

  summary(): Promise<SummaryResponse> {
    return this.request<SummaryResponse>('/summary');
  }

  whatIf(pkg: string, demote: string[]): Promise<WhatIfResponse> {
    return this.request<WhatIfResponse>('/whatif', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ package: pkg, demote }),
    });
  }
}
