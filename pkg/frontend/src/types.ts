// Response shapes of the query service. The client performs no metric
// math: every number displayed comes verbatim from these payloads.

export interface StatsRow {
  name: string;
  repository: string;
  n_strong: number;
  k_p: number;
  mhp: number;
  mhp_parents: string[];
  adjusted_mhp: number | null;
  mcohp: number;
  mcohp_pair: string[] | null;
  k_c: number;
  hc: number | null;
  adjusted_hc: number | null;
  k_d: number;
  hd: number | null;
  k_id: number;
  hid: number | null;
  adjusted_hid: number | null;
  total_downstream: number;
  gini_from_parents: number | null;
  gini_on_children: number | null;
  depth: number;
}

export interface PackagesPage {
  total: number;
  page: number;
  per_page: number;
  sort: string;
  dir: 'asc' | 'desc';
  rows: StatsRow[];
}

export interface ParentEdge {
  parent: string;
  h: number;
}

export interface ChildEdge {
  child: string;
  h: number;
}

export interface PackageDetail extends StatsRow {
  parents: ParentEdge[];
  weak_parents: string[];
  children: ChildEdge[];
  /** Reserved: requires package source analysis, always absent for now. */
  reducible: boolean | null;
}

export interface UpstreamEntry {
  package: string;
  path: string[];
  distance: number;
  h_u: number;
}

export interface UpstreamResponse {
  package: string;
  entries: UpstreamEntry[];
  /** Full upstream subgraph with per-edge h; thresholding is client-side. */
  graph: GraphDoc;
}

export interface DownstreamEntry {
  package: string;
  path: string[];
  depth: number;
  h_u: number;
}

export interface DownstreamResponse {
  package: string;
  min_depth: number | null;
  max_depth: number | null;
  entries: DownstreamEntry[];
}

export interface GraphNode {
  name: string;
  kind: 'package' | 'leaf-group';
  repository?: string | null;
  depth?: number | null;
  parent?: string | null;
  count?: number | null;
  members?: { name: string; h: number | null }[] | null;
}

export interface GraphEdge {
  parent: string;
  child: string;
  relation: string;
  h: number | null;
  betweenness: number | null;
  key_path: boolean | null;
}

export interface GraphDoc {
  directed: boolean;
  root?: string | null;
  nodes: GraphNode[];
  edges: GraphEdge[];
}

export interface WhatIfResponse {
  package: string;
  demote: string[];
  n_before: number;
  new_count: number;
  reduced: string[];
}

export interface SummaryResponse {
  schema: string;
  snapshot: string;
  repositories: Record<string, Record<string, number | null>>;
}
