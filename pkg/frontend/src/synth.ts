/**
 * Synthetic labeled images in the STL-10 shape, for tests and the demo.
 *
 * Each class combines a base color with an oriented stripe pattern whose
 * angle and frequency depend on the class, plus noise, so small models can
 * learn the labels within a few epochs.
 */

import { STL10_CHANNELS, STL10_CLASSES, STL10_SIZE } from './stl10';

const CLASS_COLORS: ReadonlyArray<readonly [number, number, number]> = [
  [0.8, 0.2, 0.2], [0.2, 0.8, 0.2], [0.2, 0.2, 0.8], [0.8, 0.8, 0.2],
  [0.8, 0.2, 0.8], [0.2, 0.8, 0.8], [0.6, 0.4, 0.2], [0.4, 0.2, 0.6],
  [0.7, 0.7, 0.7], [0.3, 0.3, 0.3],
];

/** Small deterministic PRNG (mulberry32) so tests are reproducible. */
export function makeRng(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function synthesizeImage(label: number, rng: () => number): Float32Array {
  const size = STL10_SIZE;
  const angle = (label * Math.PI) / STL10_CLASSES + (rng() - 0.5) * 0.1;
  const freq = ((2 + label) * 2 * Math.PI) / size;
  const phase = rng() * 2 * Math.PI;
  const [br, bg, bb] = CLASS_COLORS[label];
  const cos = Math.cos(angle);
  const sin = Math.sin(angle);
  const out = new Float32Array(size * size * STL10_CHANNELS);
  for (let r = 0; r < size; r++) {
    for (let c = 0; c < size; c++) {
      const stripe = 0.5 + 0.5 * Math.sin(freq * (c * cos + r * sin) + phase);
      const i = (r * size + c) * STL10_CHANNELS;
      out[i] = Math.min(1, 0.35 * br + 0.45 * stripe * br + 0.2 * rng());
      out[i + 1] = Math.min(1, 0.35 * bg + 0.45 * stripe * bg + 0.2 * rng());
      out[i + 2] = Math.min(1, 0.35 * bb + 0.45 * stripe * bb + 0.2 * rng());
    }
  }
  return out;
}

export function synthesizeDataset(count: number, seed: number): {
  images: Float32Array[];
  labels: number[];
} {
  const rng = makeRng(seed);
  const images: Float32Array[] = [];
  const labels: number[] = [];
  for (let i = 0; i < count; i++) {
    const label = i % STL10_CLASSES;
    images.push(synthesizeImage(label, rng));
    labels.push(label);
  }
  return { images, labels };
}

/** Uniform random images (no class structure), for codec and shim tests. */
export function randomImages(count: number, seed: number): Float32Array[] {
  const rng = makeRng(seed);
  const images: Float32Array[] = [];
  for (let i = 0; i < count; i++) {
    const px = new Float32Array(STL10_SIZE * STL10_SIZE * STL10_CHANNELS);
    for (let j = 0; j < px.length; j++) px[j] = rng();
    images.push(px);
  }
  return images;
}
