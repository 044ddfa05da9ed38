/**
 * Codec for the STL-10 binary layout.
 *
 * Each image is 3 * 96 * 96 bytes: one plane per channel (R, G, B), each
 * plane stored column-major. Decoded pixels are float32 in [0, 1], laid out
 * row-major height x width x channel. Labels are one byte per image, 1..10
 * on disk, 0..9 in memory.
 */

export const STL10_SIZE = 96;
export const STL10_CHANNELS = 3;
export const STL10_CLASSES = 10;
export const PLANE_BYTES = STL10_SIZE * STL10_SIZE;
export const IMAGE_BYTES = STL10_CHANNELS * PLANE_BYTES;

export interface Stl10Dataset {
  /** One Float32Array of length 96*96*3 (row-major HWC) per image. */
  images: Float32Array[];
  /** 0-based class labels, or null when no label file was given. */
  labels: number[] | null;
}

export function decodeImage(buf: Buffer, offset = 0): Float32Array {
  if (buf.length < offset + IMAGE_BYTES) {
    throw new Error(`truncated image: need ${IMAGE_BYTES} bytes at offset ${offset}`);
  }
  const out = new Float32Array(STL10_SIZE * STL10_SIZE * STL10_CHANNELS);
  for (let ch = 0; ch < STL10_CHANNELS; ch++) {
    const plane = offset + ch * PLANE_BYTES;
    for (let c = 0; c < STL10_SIZE; c++) {
      const col = plane + c * STL10_SIZE;
      for (let r = 0; r < STL10_SIZE; r++) {
        out[(r * STL10_SIZE + c) * STL10_CHANNELS + ch] = buf[col + r] / 255;
      }
    }
  }
  return out;
}

export function encodeImage(pixels: Float32Array): Buffer {
  if (pixels.length !== STL10_SIZE * STL10_SIZE * STL10_CHANNELS) {
    throw new Error(`expected ${STL10_SIZE * STL10_SIZE * STL10_CHANNELS} floats, got ${pixels.length}`);
  }
  const out = Buffer.alloc(IMAGE_BYTES);
  for (let ch = 0; ch < STL10_CHANNELS; ch++) {
    const plane = ch * PLANE_BYTES;
    for (let c = 0; c < STL10_SIZE; c++) {
      const col = plane + c * STL10_SIZE;
      for (let r = 0; r < STL10_SIZE; r++) {
        const v = Math.floor(pixels[(r * STL10_SIZE + c) * STL10_CHANNELS + ch] * 255 + 0.5);
        out[col + r] = Math.min(255, Math.max(0, v));
      }
    }
  }
  return out;
}

export function decodeDataset(imageBuf: Buffer, labelBuf: Buffer | null = null): Stl10Dataset {
  if (imageBuf.length % IMAGE_BYTES !== 0) {
    throw new Error(`image buffer length ${imageBuf.length} is not a multiple of ${IMAGE_BYTES}`);
  }
  const n = imageBuf.length / IMAGE_BYTES;
  const images: Float32Array[] = [];
  for (let i = 0; i < n; i++) {
    images.push(decodeImage(imageBuf, i * IMAGE_BYTES));
  }
  let labels: number[] | null = null;
  if (labelBuf !== null) {
    if (labelBuf.length !== n) {
      throw new Error(`label count ${labelBuf.length} does not match image count ${n}`);
    }
    labels = [];
    for (let i = 0; i < n; i++) {
      const raw = labelBuf[i];
      if (raw < 1 || raw > STL10_CLASSES) {
        throw new Error(`label ${raw} at index ${i} outside 1..${STL10_CLASSES}`);
      }
      labels.push(raw - 1);
    }
  }
  return { images, labels };
}

export function encodeDataset(images: Float32Array[], labels: number[] | null = null): {
  imageBuf: Buffer;
  labelBuf: Buffer | null;
} {
  const imageBuf = Buffer.concat(images.map(encodeImage));
  let labelBuf: Buffer | null = null;
  if (labels !== null) {
    if (labels.length !== images.length) {
      throw new Error(`label count ${labels.length} does not match image count ${images.length}`);
    }
    labelBuf = Buffer.from(labels.map((l) => {
      if (l < 0 || l >= STL10_CLASSES) throw new Error(`label ${l} outside 0..${STL10_CLASSES - 1}`);
      return l + 1;
    }));
  }
  return { imageBuf, labelBuf };
}
