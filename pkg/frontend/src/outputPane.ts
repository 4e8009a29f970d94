import { buildSegments, reconstruct } from './diff.js';
import type { AnonymizeResponse } from './types.js';

export interface OutputPaneOptions {
  onEdit(regionIndex: number, newText: string): void;
  promptFn?: (label: string, current: string) => string | null;
}

/**
 * The live output view: highlighted changed runs, optional label chips,
 * and click-to-edit on changed runs.
 */
export class OutputPane {
  labelsVisible = false;
  private response: AnonymizeResponse | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly options: OutputPaneOptions,
  ) {}

  setResponse(response: AnonymizeResponse): void {
    this.response = response;
    this.render();
  }

  toggleLabels(): void {
    this.labelsVisible = !this.labelsVisible;
    this.render();
  }

  currentText(): string {
    return this.response ? this.response.output_text : '';
  }

  render(): void {
    this.root.textContent = '';
    if (!this.response) {
      return;
    }
    const segments = buildSegments(this.response.output_text, this.response.changes);
    if (reconstruct(segments) !== this.response.output_text) {
      throw new Error('diff segments do not reconstruct the output text');
    }
    const doc = this.root.ownerDocument;
    for (const segment of segments) {
      if (!segment.changed) {
        this.root.appendChild(doc.createTextNode(segment.text));
        continue;
      }
      const run = doc.createElement('mark');
      run.className = 'changed';
      run.textContent = segment.text;
      run.dataset.regionIndex = String(segment.changeIndex);
      run.addEventListener('click', () => {
        const ask = this.options.promptFn ?? ((label, current) => window.prompt(label, current));
        const next = ask(`Edit ${segment.type ?? 'replacement'}`, segment.text);
        if (next !== null && segment.changeIndex !== null) {
          this.options.onEdit(segment.changeIndex, next);
        }
      });
      this.root.appendChild(run);
      if (this.labelsVisible) {
        const chip = doc.createElement('span');
        chip.className = 'chip';
        chip.textContent = `${segment.type ?? ''} · ${segment.category ?? ''}`;
        this.root.appendChild(chip);
      }
    }
  }
}
