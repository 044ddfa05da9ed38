/**
 * Small training demo comparing augmentation regimes.
 *
 * A synthetic labeled dataset is written in the STL-10 layout, augmented
 * through the stylepatch CLI, and a tiny classifier is trained on each
 * regime's data. Images are average-pooled 96 -> 24 and the network is kept
 * small so the whole comparison runs in pure-JS tfjs on one CPU core.
 *
 * Regimes:
 *  - none:      the originals only
 *  - naive:     originals plus horizontally flipped copies
 *  - pixel:     originals plus CLI-augmented copies (per-pixel replacement)
 *  - subregion: originals plus CLI-augmented copies (rectangle replacement)
 */

import * as tf from '@tensorflow/tfjs';
import { mkdirSync, writeFileSync } from 'fs';
import { join } from 'path';
import { batchAugment } from './augment';
import { lineChartSvg, Series } from './plot';
import { STL10_CHANNELS, STL10_CLASSES, STL10_SIZE, decodeDataset, encodeDataset } from './stl10';
import { synthesizeDataset } from './synth';
import { readFileSync } from 'fs';

export const REGIMES = ['none', 'naive', 'pixel', 'subregion'] as const;
export type Regime = (typeof REGIMES)[number];

export interface RegimeMetrics {
  regime: Regime;
  datasetSize: number;
  loss: number[];
  accuracy: number[];
}

export interface DemoResult {
  metrics: RegimeMetrics[];
  csvPath: string;
  plotPath: string;
}

export interface DemoOptions {
  subsetSize?: number;
  epochs?: number;
  seed?: number;
  outDir: string;
}

function flipHorizontal(image: Float32Array): Float32Array {
  const out = new Float32Array(image.length);
  for (let r = 0; r < STL10_SIZE; r++) {
    for (let c = 0; c < STL10_SIZE; c++) {
      const src = (r * STL10_SIZE + c) * STL10_CHANNELS;
      const dst = (r * STL10_SIZE + (STL10_SIZE - 1 - c)) * STL10_CHANNELS;
      for (let ch = 0; ch < STL10_CHANNELS; ch++) out[dst + ch] = image[src + ch];
    }
  }
  return out;
}

function regimeDataset(
  regime: Regime,
  base: { images: Float32Array[]; labels: number[] },
  files: { imagesIn: string; labelsIn: string },
  outDir: string,
  seed: number,
): { images: Float32Array[]; labels: number[] } {
  if (regime === 'none') return base;
  if (regime === 'naive') {
    return {
      images: base.images.concat(base.images.map(flipHorizontal)),
      labels: base.labels.concat(base.labels),
    };
  }
  const dir = join(outDir, regime);
  mkdirSync(dir, { recursive: true });
  const { imagesOut, labelsOut } = batchAugment(files.imagesIn, files.labelsIn, dir, {
    seed,
    mode: regime,
    p: 0.5,
    alpha: 0.5,
  });
  const decoded = decodeDataset(readFileSync(imagesOut), readFileSync(labelsOut!));
  return { images: decoded.images, labels: decoded.labels! };
}

function toTensors(images: Float32Array[], labels: number[]): { x: tf.Tensor4D; y: tf.Tensor2D } {
  return tf.tidy(() => {
    const n = images.length;
    const flat = new Float32Array(n * images[0].length);
    images.forEach((img, i) => flat.set(img, i * img.length));
    const full = tf.tensor4d(flat, [n, STL10_SIZE, STL10_SIZE, STL10_CHANNELS]);
    // 96 -> 24 exact average pooling keeps the class patterns visible
    const x = tf.avgPool(full, 4, 4, 'valid') as tf.Tensor4D;
    const y = tf.oneHot(tf.tensor1d(labels, 'int32'), STL10_CLASSES) as tf.Tensor2D;
    return { x, y };
  });
}

function buildModel(): tf.LayersModel {
  const model = tf.sequential();
  model.add(tf.layers.conv2d({
    inputShape: [24, 24, STL10_CHANNELS],
    filters: 8,
    kernelSize: 5,
    strides: 2,
    activation: 'relu',
  }));
  model.add(tf.layers.flatten());
  model.add(tf.layers.dense({ units: STL10_CLASSES, activation: 'softmax' }));
  model.compile({
    optimizer: tf.train.adam(1e-3),
    loss: 'categoricalCrossentropy',
    metrics: ['accuracy'],
  });
  return model;
}

async function trainRegime(
  regime: Regime,
  data: { images: Float32Array[]; labels: number[] },
  epochs: number,
  seed: number,
): Promise<RegimeMetrics> {
  tf.util.shuffleCombo(data.images, data.labels);
  const { x, y } = toTensors(data.images, data.labels);
  try {
    tf.randomUniform([1], 0, 1, 'float32', seed); // fix kernel-init stream
    const model = buildModel();
    const history = await model.fit(x, y, { epochs, batchSize: 32, shuffle: true, verbose: 0 });
    return {
      regime,
      datasetSize: data.images.length,
      loss: (history.history.loss as number[]).map(Number),
      accuracy: (history.history.acc as number[]).map(Number),
    };
  } finally {
    x.dispose();
    y.dispose();
  }
}

export async function demoTrain(options: DemoOptions): Promise<DemoResult> {
  const subsetSize = options.subsetSize ?? 500;
  const epochs = options.epochs ?? 5;
  const seed = options.seed ?? 2024;
  const outDir = options.outDir;
  mkdirSync(outDir, { recursive: true });

  const base = synthesizeDataset(subsetSize, seed);
  const { imageBuf, labelBuf } = encodeDataset(base.images, base.labels);
  const imagesIn = join(outDir, 'base_X.bin');
  const labelsIn = join(outDir, 'base_y.bin');
  writeFileSync(imagesIn, imageBuf);
  writeFileSync(labelsIn, labelBuf!);

  const metrics: RegimeMetrics[] = [];
  for (const regime of REGIMES) {
    const data = regimeDataset(regime, base, { imagesIn, labelsIn }, outDir, seed);
    metrics.push(await trainRegime(regime, data, epochs, seed));
  }

  const csvLines = ['regime,dataset_size,epoch,loss,accuracy'];
  for (const m of metrics) {
    m.loss.forEach((loss, e) => {
      csvLines.push(`${m.regime},${m.datasetSize},${e + 1},${loss},${m.accuracy[e]}`);
    });
  }
  const csvPath = join(outDir, 'metrics.csv');
  writeFileSync(csvPath, csvLines.join('\n') + '\n');

  const series: Series[] = metrics.map((m) => ({ name: m.regime, values: m.loss }));
  const plotPath = join(outDir, 'loss_comparison.svg');
  writeFileSync(plotPath, lineChartSvg(series, 'Training loss by augmentation regime', 'loss'));

  return { metrics, csvPath, plotPath };
}
