import { mkdtempSync, readFileSync, rmSync, writeFileSync } from 'fs';
import { tmpdir } from 'os';
import { join } from 'path';
import { afterAll, describe, expect, it } from 'vitest';
import { batchAugment, boundAugment, readManifest } from '../src/augment';
import { IMAGE_BYTES, encodeDataset } from '../src/stl10';
import { randomImages } from '../src/synth';

const dir = mkdtempSync(join(tmpdir(), 'augment-test-'));
afterAll(() => rmSync(dir, { recursive: true, force: true }));

describe('boundAugment', () => {
  it('reproduces each batch item byte for byte (100 image/seed pairs)', () => {
    const n = 100;
    const seed = 77_000_001;
    const opts = { seed, mode: 'subregion', p: 0.5, alpha: 0.5 };
    const images = randomImages(n, 41);
    const { imageBuf } = encodeDataset(images);
    const imagesIn = join(dir, 'base_X.bin');
    writeFileSync(imagesIn, imageBuf);

    // batch run: originals 0..n-1 then copies at stream indices n..2n-1
    const { imagesOut, manifest } = batchAugment(imagesIn, null, dir, opts);
    const batchBytes = readFileSync(imagesOut);
    expect(batchBytes.length).toBe(2 * n * IMAGE_BYTES);
    const { records } = readManifest(manifest);
    expect(records.length).toBe(n);
    expect(records.some((r) => r.applied)).toBe(true);
    expect(records.some((r) => !r.applied)).toBe(true);

    for (let i = 0; i < n; i++) {
      const single = boundAugment(images[i], n + i, opts);
      const copy = batchBytes.subarray((n + i) * IMAGE_BYTES, (n + i + 1) * IMAGE_BYTES);
      expect(single.bytes.equals(copy), `copy ${i} differs from batch output`).toBe(true);
      expect(single.record.stream_index).toBe(records[i].stream_index);
      expect(single.record.applied).toBe(records[i].applied);
      expect(single.record.patch_mode).toBe(records[i].patch_mode);
      expect(single.record.region).toEqual(records[i].region);
    }
  });

  it('returns an unchanged image when the gate never fires', () => {
    const image = randomImages(1, 9)[0];
    const result = boundAugment(image, 0, { seed: 5, p: 0 });
    expect(result.record.applied).toBe(false);
    expect(Array.from(result.image)).toEqual(
      Array.from(boundAugment(image, 0, { seed: 5, mode: 'none' }).image),
    );
  });

  it('exposes the manifest header through readManifest', () => {
    const image = randomImages(1, 3)[0];
    const sub = mkdtempSync(join(tmpdir(), 'augment-header-'));
    try {
      const imagesIn = join(sub, 'one.bin');
      writeFileSync(imagesIn, encodeDataset([image]).imageBuf);
      const { manifest } = batchAugment(imagesIn, null, sub, { seed: 12, alpha: 0.25 });
      const { header } = readManifest(manifest);
      expect(header.master_seed).toBe(12);
      expect((header.config as Record<string, unknown>).style_alpha).toBe(0.25);
    } finally {
      rmSync(sub, { recursive: true, force: true });
    }
  });
});
