// Downstream dependency graph rendered as layered SVG: nodes placed by
// depth, leaf groups drawn as single green nodes (expandable on click),
// high-betweenness edges red, per-edge heaviness as labels.

import { escapeHtml } from './format.js';
import type { GraphDoc, GraphNode } from './types.js';

export const MAX_VISIBLE_NODES = 500;

const NODE_W = 120;
const NODE_H = 26;
const LAYER_GAP = 90;
const COL_GAP = 16;

export interface LayoutNode {
  node: GraphNode;
  x: number;
  y: number;
  truncated?: boolean;
}

export interface GraphViewState {
  expanded: Set<string>;        // names of expanded leaf groups
}

export function emptyViewState(): GraphViewState {
  return { expanded: new Set() };
}

/** Groups expand in place: members become package nodes on the next layer. */
export function expandGroup(state: GraphViewState, groupName: string): GraphViewState {
  const expanded = new Set(state.expanded);
  expanded.add(groupName);
  return { expanded };
}

export function visibleNodes(doc: GraphDoc, state: GraphViewState): GraphNode[] {
  const out: GraphNode[] = [];
  for (const node of doc.nodes) {
    if (node.kind === 'leaf-group' && state.expanded.has(node.name)) {
      for (const member of node.members ?? []) {
        out.push({ name: member.name, kind: 'package', depth: depthOfGroup(doc, node) });
      }
    } else {
      out.push(node);
    }
    if (out.length >= MAX_VISIBLE_NODES) break;
  }
  return out.slice(0, MAX_VISIBLE_NODES);
}

function depthOfGroup(doc: GraphDoc, group: GraphNode): number {
  const parent = doc.nodes.find((n) => n.name === group.parent);
  return (parent?.depth ?? 0) + 1;
}

export function layout(doc: GraphDoc, state: GraphViewState): LayoutNode[] {
  const nodes = visibleNodes(doc, state);
  const byDepth = new Map<number, GraphNode[]>();
  for (const node of nodes) {
    const d = node.depth ?? (node.kind === 'leaf-group' ? depthOfGroup(doc, node) : 0);
    const bucket = byDepth.get(d) ?? [];
    bucket.push(node);
    byDepth.set(d, bucket);
  }
  const placed: LayoutNode[] = [];
  const depths = [...byDepth.keys()].sort((a, b) => a - b);
  for (const d of depths) {
    const row = byDepth.get(d)!;
    row.sort((a, b) => a.name.localeCompare(b.name));
    row.forEach((node, i) => {
      placed.push({
        node,
        x: i * (NODE_W + COL_GAP) + NODE_W / 2,
        y: d * LAYER_GAP + NODE_H,
      });
    });
  }
  return placed;
}

export function renderSvg(doc: GraphDoc, state: GraphViewState): string {
  const placed = layout(doc, state);
  const pos = new Map(placed.map((p) => [p.node.name, p]));
  const edges: string[] = [];
  for (const edge of doc.edges) {
    const from = pos.get(edge.parent);
    const to = pos.get(edge.child);
    if (!from || !to) continue;               // group collapsed or over cap
    const cls = edge.key_path ? 'edge key-path' : 'edge';
    edges.push(
      `<line class="${cls}" x1="${from.x}" y1="${from.y}" x2="${to.x}" y2="${to.y}"></line>` +
      (edge.h !== null && edge.h !== undefined
        ? `<text class="edge-label" x="${(from.x + to.x) / 2}" y="${(from.y + to.y) / 2 - 4}">` +
          `${edge.h}</text>`
        : ''));
  }
  const nodes = placed.map(({ node, x, y }) => {
    const isGroup = node.kind === 'leaf-group';
    const cls = isGroup ? 'node leaf-group' : 'node';
    const label = isGroup ? `${node.count} leaf pkg${(node.count ?? 0) > 1 ? 's' : ''}` : node.name;
    return `<g class="${cls}" data-name="${escapeHtml(node.name)}"` +
      `${isGroup ? ' data-expandable="1"' : ''} transform="translate(${x - NODE_W / 2},${y - NODE_H / 2})">` +
      `<rect width="${NODE_W}" height="${NODE_H}" rx="6"></rect>` +
      `<text x="${NODE_W / 2}" y="${NODE_H / 2 + 4}">${escapeHtml(label)}</text></g>`;
  });
  const width = Math.max(300, ...placed.map((p) => p.x + NODE_W));
  const height = Math.max(120, ...placed.map((p) => p.y + NODE_H * 2));
  const over = doc.nodes.length > MAX_VISIBLE_NODES
    ? `<text class="truncation-note" x="8" y="${height - 8}">` +
      `showing ${MAX_VISIBLE_NODES} of ${doc.nodes.length} nodes</text>`
    : '';
  return `<svg class="dep-graph" viewBox="0 0 ${width} ${height}" ` +
    `xmlns="http://www.w3.org/2000/svg">${edges.join('')}${nodes.join('')}${over}</svg>`;
}
