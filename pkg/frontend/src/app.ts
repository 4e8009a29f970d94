import { ApiClient } from './api.js';
import { Palette, attachPointerEvents, type Canvas2d } from './palette.js';
import { OutputPane } from './outputPane.js';
import { RateLimiter } from './rateLimit.js';
import type { AnonymizeResponse, ModeName, Point } from './types.js';

const REQUEST_INTERVAL_MS = 200; // at most 5 anonymize calls per second
const MAGNET_RADIUS = 0.03;

export interface AppElements {
  canvas: HTMLCanvasElement;
  input: HTMLTextAreaElement;
  output: HTMLElement;
  modeSelect: HTMLSelectElement;
  labelsButton: HTMLButtonElement;
  replaceButton: HTMLButtonElement;
  status: HTMLElement;
}

/** Standalone page controller; the textarea stands in for a host input. */
export class App {
  readonly api: ApiClient;
  readonly palette: Palette;
  readonly pane: OutputPane;
  private readonly limiter = new RateLimiter(REQUEST_INTERVAL_MS);
  private sessionId: string | null = null;
  private lastResponse: AnonymizeResponse | null = null;

  constructor(
    private readonly elements: AppElements,
    baseUrl = '',
    fetchFn: typeof fetch = fetch.bind(globalThis),
  ) {
    this.api = new ApiClient(baseUrl, fetchFn);
    const ctx = elements.canvas.getContext('2d') as unknown as Canvas2d;
    this.palette = new Palette(ctx, {
      view: { width: elements.canvas.width, height: elements.canvas.height, margin: 24 },
      magnetRadius: MAGNET_RADIUS,
      onSelect: (point) => this.requestAnonymize(point),
    });
    this.pane = new OutputPane(elements.output, {
      onEdit: (index, text) => void this.edit(index, text),
    });
    attachPointerEvents(elements.canvas, this.palette);
    elements.labelsButton.addEventListener('click', () => this.pane.toggleLabels());
    elements.replaceButton.addEventListener('click', () => this.replaceText());
  }

  async start(): Promise<void> {
    try {
      this.palette.setFrontier(await this.api.curve());
      this.elements.status.textContent = '';
    } catch (err) {
      this.elements.status.textContent = 'could not load the trade-off curve — retry';
      const retry = this.elements.status.ownerDocument.createElement('button');
      retry.textContent = 'retry';
      retry.addEventListener('click', () => void this.start());
      this.elements.status.appendChild(retry);
    }
  }

  mode(): ModeName {
    return (this.elements.modeSelect.value as ModeName) || 'full';
  }

  requestAnonymize(point: Point): void {
    this.limiter.call(() => void this.anonymizeNow(point));
  }

  private async anonymizeNow(point: Point): Promise<void> {
    const text = this.elements.input.value;
    if (!text) {
      return;
    }
    try {
      const response = await this.api.anonymize({
        text,
        mode: this.mode(),
        point,
        session_id: this.sessionId ?? undefined,
      });
      if (response === null) {
        return; // superseded by a newer drag position
      }
      this.apply(response);
    } catch (err) {
      this.elements.status.textContent = `request failed: ${String(err)}`;
    }
  }

  private apply(response: AnonymizeResponse): void {
    this.lastResponse = response;
    this.sessionId = response.session_id;
    if (response.snapped_point) {
      this.palette.applySnapped(response.snapped_point);
    }
    this.pane.setResponse(response);
    this.elements.status.textContent = response.warnings.join('; ');
  }

  async edit(regionIndex: number, newText: string): Promise<void> {
    if (!this.sessionId) {
      return;
    }
    try {
      this.apply(await this.api.edit(this.sessionId, regionIndex, newText));
    } catch (err) {
      // stale region index: refetch the current state and re-render
      const point = this.palette.state.snapped ?? this.palette.state.point;
      await this.anonymizeNow(point);
    }
  }

  /** Copy the final output into the host text area. */
  replaceText(): void {
    if (this.lastResponse) {
      this.elements.input.value = this.lastResponse.output_text;
    }
  }
}

export function mount(document: Document, baseUrl = ''): App {
  const byId = <T extends HTMLElement>(id: string): T => {
    const el = document.getElementById(id);
    if (!el) {
      throw new Error(`missing element #${id}`);
    }
    return el as T;
  };
  const app = new App(
    {
      canvas: byId<HTMLCanvasElement>('palette'),
      input: byId<HTMLTextAreaElement>('host-input'),
      output: byId<HTMLElement>('output-pane'),
      modeSelect: byId<HTMLSelectElement>('mode-select'),
      labelsButton: byId<HTMLButtonElement>('labels-toggle'),
      replaceButton: byId<HTMLButtonElement>('replace-text'),
      status: byId<HTMLElement>('status'),
    },
    baseUrl,
  );
  void app.start();
  return app;
}
