/**
 * Bindings to the `stylepatch` CLI.
 *
 * Every augmentation goes through the installed command-line tool on STL-10
 * binary files; nothing is reimplemented here, so results are byte-identical
 * to batch runs with the same seed and stream index.
 */

import { spawnSync } from 'child_process';
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from 'fs';
import { tmpdir } from 'os';
import { join } from 'path';
import { IMAGE_BYTES, decodeImage, encodeImage } from './stl10';

export interface AugmentOptions {
  /** Master seed of the run being reproduced. */
  seed: number;
  /** Patch mode; the CLI default is "subregion". */
  mode?: string;
  /** Gate probability p. */
  p?: number;
  /** Per-pixel replacement probability q. */
  q?: number;
  /** Style blend weight. */
  alpha?: number;
  /** Style provider, e.g. "colorstat" or "identity". */
  style?: string;
}

export interface AugmentRecord {
  source_id: string;
  stream_index: number;
  applied: boolean;
  patch_mode: string;
  region: { x: number; y: number; width: number; height: number } | null;
  [key: string]: unknown;
}

export interface AugmentResult {
  /** Augmented image, float32 HWC in [0, 1]. */
  image: Float32Array;
  /** Raw STL-10 bytes of the augmented image. */
  bytes: Buffer;
  /** The manifest record the CLI wrote for this item. */
  record: AugmentRecord;
}

export const CLI = process.env.STYLEPATCH_CLI ?? 'stylepatch';

export function runCli(args: string[]): void {
  const res = spawnSync(CLI, args, { encoding: 'utf8' });
  if (res.error) throw res.error;
  if (res.status !== 0) {
    throw new Error(`${CLI} ${args.join(' ')} exited ${res.status}: ${res.stderr}`);
  }
}

export function readManifest(path: string): { header: Record<string, unknown>; records: AugmentRecord[] } {
  const lines = readFileSync(path, 'utf8').split('\n').filter((l) => l.length > 0);
  const header = JSON.parse(lines[0]) as Record<string, unknown>;
  const records = lines.slice(1).map((l) => JSON.parse(l) as AugmentRecord);
  return { header, records };
}

function configArgs(opts: AugmentOptions): string[] {
  const args: string[] = [];
  if (opts.mode !== undefined) args.push('--mode', opts.mode);
  if (opts.p !== undefined) args.push('-p', String(opts.p));
  if (opts.q !== undefined) args.push('-q', String(opts.q));
  if (opts.alpha !== undefined) args.push('--alpha', String(opts.alpha));
  if (opts.style !== undefined) args.push('--style', opts.style);
  return args;
}

/**
 * Augment one image exactly as item `streamIndex` of a batch run with the
 * same seed and options would be augmented.
 */
export function boundAugment(
  image: Float32Array,
  streamIndex: number,
  opts: AugmentOptions,
): AugmentResult {
  const dir = mkdtempSync(join(tmpdir(), 'stylepatch-'));
  try {
    const input = join(dir, 'in.bin');
    const output = join(dir, 'out.bin');
    const manifest = join(dir, 'manifest.jsonl');
    writeFileSync(input, encodeImage(image));
    runCli([
      'augment', input, output,
      '--format', 'stl10',
      '--in-place',
      '--stream-offset', String(streamIndex),
      '--seed', String(opts.seed),
      '--manifest', manifest,
      ...configArgs(opts),
    ]);
    const bytes = readFileSync(output);
    if (bytes.length !== IMAGE_BYTES) {
      throw new Error(`expected ${IMAGE_BYTES} output bytes, got ${bytes.length}`);
    }
    const { records } = readManifest(manifest);
    return { image: decodeImage(bytes), bytes, record: records[0] };
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}

/**
 * Batch-augment an STL-10 file pair on disk (`--ratio 1`: originals
 * followed by one gated copy each) and return the output paths.
 */
export function batchAugment(
  imagesIn: string,
  labelsIn: string | null,
  outDir: string,
  opts: AugmentOptions,
): { imagesOut: string; labelsOut: string | null; manifest: string } {
  const imagesOut = join(outDir, 'aug_X.bin');
  const labelsOut = labelsIn === null ? null : join(outDir, 'aug_y.bin');
  const manifest = join(outDir, 'manifest.jsonl');
  const args = [
    'augment', imagesIn, imagesOut,
    '--format', 'stl10',
    '--ratio', '1',
    '--seed', String(opts.seed),
    '--manifest', manifest,
    ...configArgs(opts),
  ];
  if (labelsIn !== null) args.push('--labels-in', labelsIn);
  if (labelsOut !== null) args.push('--labels-out', labelsOut);
  runCli(args);
  return { imagesOut, labelsOut, manifest };
}
