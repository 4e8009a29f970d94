import type { CurveVertex, Point } from './types.js';

export function clamp01(value: number): number {
  return Math.min(1, Math.max(0, value));
}

export function clampPoint(p: Point): Point {
  return { x: clamp01(p.x), y: clamp01(p.y) };
}

export function distance(a: Point, b: Point): number {
  return Math.hypot(a.x - b.x, a.y - b.y);
}

/** Nearest frontier vertex under Euclidean distance; ties to the smaller set. */
export function nearestVertex(vertices: CurveVertex[], p: Point): CurveVertex {
  if (vertices.length === 0) {
    throw new Error('empty frontier');
  }
  let best = vertices[0];
  let bestDist = distance(best, p);
  for (const vertex of vertices.slice(1)) {
    const d = distance(vertex, p);
    if (d < bestDist || (d === bestDist && vertex.categories.length < best.categories.length)) {
      best = vertex;
      bestDist = d;
    }
  }
  return best;
}

/** Pre-response magnet: snap to a vertex when the pointer is close enough. */
export function magnetSnap(vertices: CurveVertex[], p: Point, radius: number): Point {
  if (vertices.length === 0) {
    return p;
  }
  const near = nearestVertex(vertices, p);
  return distance(near, p) <= radius ? { x: near.x, y: near.y } : p;
}

export interface ViewBox {
  width: number;
  height: number;
  margin: number;
}

/** Normalized [0,1]^2 coordinates to canvas pixels (y axis flipped). */
export function toPixels(p: Point, view: ViewBox): Point {
  const spanX = view.width - 2 * view.margin;
  const spanY = view.height - 2 * view.margin;
  return {
    x: view.margin + p.x * spanX,
    y: view.height - view.margin - p.y * spanY,
  };
}

/** Canvas pixels back to normalized coordinates, clamped to the unit square. */
export function fromPixels(px: Point, view: ViewBox): Point {
  const spanX = view.width - 2 * view.margin;
  const spanY = view.height - 2 * view.margin;
  return clampPoint({
    x: (px.x - view.margin) / spanX,
    y: (view.height - view.margin - px.y) / spanY,
  });
}
