import type { ChangePayload } from './types.js';

export interface DiffSegment {
  text: string;
  changed: boolean;
  changeIndex: number | null;
  category?: string;
  type?: string;
}

/**
 * Split the output text into alternating unchanged/changed runs. The
 * concatenation of segment texts always reconstructs the output exactly.
 */
export function buildSegments(outputText: string, changes: ChangePayload[]): DiffSegment[] {
  const ordered = [...changes].sort((a, b) => a.start - b.start);
  const segments: DiffSegment[] = [];
  let cursor = 0;
  ordered.forEach((change, index) => {
    if (change.start < cursor || change.end > outputText.length) {
      throw new Error('change regions overlap or exceed the output text');
    }
    if (change.start > cursor) {
      segments.push({ text: outputText.slice(cursor, change.start), changed: false, changeIndex: null });
    }
    segments.push({
      text: outputText.slice(change.start, change.end),
      changed: true,
      changeIndex: index,
      category: change.category,
      type: change.type,
    });
    cursor = change.end;
  });
  if (cursor < outputText.length) {
    segments.push({ text: outputText.slice(cursor), changed: false, changeIndex: null });
  }
  return segments;
}

export function reconstruct(segments: DiffSegment[]): string {
  return segments.map((s) => s.text).join('');
}
