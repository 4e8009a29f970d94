/**
 * Trailing-edge rate limiter: at most one call per interval. The first call
 * fires immediately; later calls within the window coalesce into one
 * trailing call carrying the latest payload, so a 60 Hz drag stream issues
 * at most 1000/intervalMs requests per second and never drops the final
 * position.
 */
export class RateLimiter {
  private lastFired = -Infinity;
  private pending: (() => void) | null = null;
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(private readonly intervalMs: number) {}

  call(fn: () => void): void {
    const now = Date.now();
    if (now - this.lastFired >= this.intervalMs && this.timer === null) {
      this.lastFired = now;
      fn();
      return;
    }
    this.pending = fn;
    if (this.timer === null) {
      const wait = Math.max(0, this.lastFired + this.intervalMs - now);
      this.timer = setTimeout(() => {
        this.timer = null;
        const queued = this.pending;
        this.pending = null;
        if (queued) {
          this.lastFired = Date.now();
          queued();
        }
      }, wait);
    }
  }

  cancel(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.pending = null;
  }
}
