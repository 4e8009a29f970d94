import type { Canvas2d } from '../src/palette.js';
import type { CurveVertex } from '../src/types.js';

export interface RecordedOp {
  op: string;
  args: number[] | string[];
}

/** Canvas context stand-in that records every drawing call. */
export function makeCtxRecorder(): { ctx: Canvas2d; ops: RecordedOp[] } {
  const ops: RecordedOp[] = [];
  const record =
    (op: string) =>
    (...args: unknown[]) =>
      void ops.push({ op, args: args as number[] });
  const ctx = {
    clearRect: record('clearRect'),
    beginPath: record('beginPath'),
    moveTo: record('moveTo'),
    lineTo: record('lineTo'),
    closePath: record('closePath'),
    stroke: record('stroke'),
    fill: record('fill'),
    arc: record('arc'),
    fillText: record('fillText'),
    strokeStyle: '',
    fillStyle: '',
    lineWidth: 1,
    font: '',
  } as Canvas2d;
  return { ctx, ops };
}

export const TOY_FRONTIER: CurveVertex[] = [
  { x: 0, y: 1, threshold: null, categories: [] },
  { x: 0.6667, y: 0.8333, threshold: 1.0, categories: ['A'] },
  { x: 1, y: 0, threshold: 0.5, categories: ['A', 'B'] },
];

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'content-type': 'application/json' },
  });
}
