// Deterministic 32-bit RNG (mulberry32). Every stochastic choice in the
// harness flows through one of these so a fixed seed fixes the whole run.

export type Rng = () => number;

export function mulberry32(seed: number): Rng {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

/** Integer in [0, bound). */
export function randInt(rng: Rng, bound: number): number {
  return Math.floor(rng() * bound);
}

/** Mix two integers into a fresh seed, so substreams do not overlap. */
export function deriveSeed(seed: number, ...parts: number[]): number {
  let h = seed >>> 0;
  for (const part of parts) {
    h = Math.imul(h ^ (part >>> 0), 0x9e3779b1) >>> 0;
    h = ((h << 13) | (h >>> 19)) >>> 0;
  }
  return h >>> 0;
}

/** First k entries of a seeded Fisher-Yates shuffle of 0..n-1. */
export function sampleWithoutReplacement(rng: Rng, n: number, k: number): number[] {
  const pool = Array.from({ length: n }, (_, i) => i);
  const take = Math.min(k, n);
  for (let i = 0; i < take; i++) {
    const j = i + randInt(rng, n - i);
    [pool[i], pool[j]] = [pool[j], pool[i]];
  }
  return pool.slice(0, take);
}
