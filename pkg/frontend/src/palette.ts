import { clampPoint, fromPixels, magnetSnap, toPixels, type ViewBox } from './geometry.js';
import type { CurveVertex, Point } from './types.js';

/** The 2D context subset the palette draws with; tests inject a recorder. */
export interface Canvas2d {
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  closePath(): void;
  stroke(): void;
  fill(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fillText(text: string, x: number, y: number): void;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  fillStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  font: string;
}

export interface PaletteOptions {
  view: ViewBox;
  magnetRadius: number;
  onSelect(point: Point): void;
}

export interface PaletteState {
  frontier: CurveVertex[];
  point: Point;
  snapped: Point | null;
  dragging: boolean;
}

/**
 * The trade-off panel: frontier polyline, shaded feasible region under it,
 * and the draggable control point with a pre-response magnet.
 */
export class Palette {
  readonly state: PaletteState = {
    frontier: [],
    point: { x: 0, y: 1 },
    snapped: null,
    dragging: false,
  };

  constructor(
    private readonly ctx: Canvas2d,
    private readonly options: PaletteOptions,
  ) {}

  setFrontier(frontier: CurveVertex[]): void {
    this.state.frontier = frontier;
    this.render();
  }

  /** Server confirmation: the point always lands on the snapped vertex. */
  applySnapped(point: Point): void {
    this.state.snapped = point;
    this.state.point = { ...point };
    this.render();
  }

  pointerAt(px: Point): void {
    const normalized = clampPoint(fromPixels(px, this.options.view));
    this.state.point = magnetSnap(this.state.frontier, normalized, this.options.magnetRadius);
    this.render();
    this.options.onSelect(this.state.point);
  }

  render(): void {
    const { ctx } = this;
    const { view } = this.options;
    ctx.clearRect(0, 0, view.width, view.height);

    ctx.font = '12px sans-serif';
    ctx.fillStyle = '#444';
    ctx.fillText('privacy protection', view.width / 2 - 50, view.height - 4);
    ctx.fillText('model performance', 4, 12);

    if (this.state.frontier.length > 0) {
      const pixels = this.state.frontier.map((v) => toPixels(v, view));
      const origin = toPixels({ x: 0, y: 0 }, view);
      const corner = toPixels({ x: 1, y: 0 }, view);

      // feasible region: on or below the polyline
      ctx.beginPath();
      ctx.moveTo(origin.x, origin.y);
      for (const p of pixels) {
        ctx.lineTo(p.x, p.y);
      }
      ctx.lineTo(corner.x, corner.y);
      ctx.closePath();
      ctx.fillStyle = 'rgba(90, 140, 220, 0.25)';
      ctx.fill();

      ctx.beginPath();
      ctx.moveTo(pixels[0].x, pixels[0].y);
      for (const p of pixels.slice(1)) {
        ctx.lineTo(p.x, p.y);
      }
      ctx.strokeStyle = '#3a6bc4';
      ctx.lineWidth = 2;
      ctx.stroke();

      ctx.fillStyle = '#3a6bc4';
      for (const p of pixels) {
        ctx.beginPath();
        ctx.arc(p.x, p.y, 3, 0, Math.PI * 2);
        ctx.fill();
      }
    }

    const knob = toPixels(this.state.point, view);
    ctx.beginPath();
    ctx.arc(knob.x, knob.y, 6, 0, Math.PI * 2);
    ctx.fillStyle = '#d0392e';
    ctx.fill();
  }
}

/** Wire pointer events from a real canvas element to a palette. */
export function attachPointerEvents(canvas: HTMLCanvasElement, palette: Palette): void {
  const position = (event: PointerEvent): Point => {
    const rect = canvas.getBoundingClientRect();
    return { x: event.clientX - rect.left, y: event.clientY - rect.top };
  };
  canvas.addEventListener('pointerdown', (event) => {
    palette.state.dragging = true;
    try {
      canvas.setPointerCapture(event.pointerId);
    } catch {
      // jsdom and some embedded hosts have no pointer capture
    }
    palette.pointerAt(position(event));
  });
  canvas.addEventListener('pointermove', (event) => {
    if (palette.state.dragging) {
      palette.pointerAt(position(event));
    }
  });
  const stop = () => {
    palette.state.dragging = false;
  };
  canvas.addEventListener('pointerup', stop);
  canvas.addEventListener('pointercancel', stop);
}
