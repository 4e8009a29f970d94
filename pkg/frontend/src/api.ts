import type { AnonymizeRequest, AnonymizeResponse, CurveVertex } from './types.js';

/**
 * Thin client over the anonymization service. Anonymize responses carry a
 * sequence number: a response older than the newest request in flight is
 * discarded (last-write-wins), so a fast drag can never paint stale output
 * over fresh output.
 */
export class ApiClient {
  private seq = 0;
  private applied = 0;

  constructor(
    private readonly baseUrl: string = '',
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  async curve(): Promise<CurveVertex[]> {
    const response = await this.fetchFn(`${this.baseUrl}/v1/curve`);
    if (!response.ok) {
      throw new Error(`curve fetch failed: ${response.status}`);
    }
    return (await response.json()) as CurveVertex[];
  }

  /** Resolves null when a newer request superseded this one. */
  async anonymize(request: AnonymizeRequest): Promise<AnonymizeResponse | null> {
    const ticket = ++this.seq;
    const response = await this.fetchFn(`${this.baseUrl}/v1/anonymize`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(request),
    });
    if (ticket <= this.applied) {
      return null;
    }
    if (!response.ok) {
      throw new Error(`anonymize failed: ${response.status}`);
    }
    this.applied = ticket;
    return (await response.json()) as AnonymizeResponse;
  }

  async edit(
    sessionId: string,
    regionIndex: number,
    newText: string,
  ): Promise<AnonymizeResponse> {
    const response = await this.fetchFn(`${this.baseUrl}/v1/edit`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({
        session_id: sessionId,
        region_index: regionIndex,
        new_text: newText,
      }),
    });
    if (!response.ok) {
      throw new Error(`edit failed: ${response.status}`);
    }
    return (await response.json()) as AnonymizeResponse;
  }
}
