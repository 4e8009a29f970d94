import { afterEach, beforeEach, describe, expect, it, vi } from 'vitest';

import { RateLimiter } from '../src/rateLimit.js';

describe('RateLimiter', () => {
  beforeEach(() => {
    vi.useFakeTimers();
  });

  afterEach(() => {
    vi.useRealTimers();
  });

  it('fires the first call immediately', () => {
    const limiter = new RateLimiter(200);
    const calls: number[] = [];
    limiter.call(() => calls.push(Date.now()));
    expect(calls).toHaveLength(1);
  });

  it('caps a 60 Hz drag stream at 5 requests per second', () => {
    const limiter = new RateLimiter(200);
    const started = Date.now();
    const firedAt: number[] = [];
    // simulate one full second of pointermove events at ~60 Hz
    for (let i = 0; i < 60; i++) {
      limiter.call(() => firedAt.push(Date.now() - started));
      vi.advanceTimersByTime(1000 / 60);
    }
    const withinFirstSecond = firedAt.filter((t) => t < 1000);
    expect(withinFirstSecond.length).toBeLessThanOrEqual(5);
    expect(withinFirstSecond.length).toBeGreaterThan(0);
  });

  it('always delivers the latest payload as the trailing call', () => {
    const limiter = new RateLimiter(200);
    const seen: string[] = [];
    limiter.call(() => seen.push('first'));
    limiter.call(() => seen.push('stale'));
    limiter.call(() => seen.push('latest'));
    vi.advanceTimersByTime(250);
    expect(seen).toEqual(['first', 'latest']);
  });

  it('cancel drops the pending trailing call', () => {
    const limiter = new RateLimiter(200);
    const seen: string[] = [];
    limiter.call(() => seen.push('first'));
    limiter.call(() => seen.push('pending'));
    limiter.cancel();
    vi.advanceTimersByTime(500);
    expect(seen).toEqual(['first']);
  });
});
