export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

/** Absent metrics render as an em-space dash, never as 0. */
export function cell(value: number | string | null | undefined): string {
  if (value === null || value === undefined) return '–';
  return escapeHtml(String(value));
}

export function pathArrow(path: string[]): string {
  return path.map(escapeHtml).join(' → ');
}
