/**
 * Deterministic template-matching classifier.
 *
 * Each class's clean toy rendering is the template; a frame's score
 * for a class is a softmax over negative mean absolute pixel
 * differences. No learned weights, no randomness: the same frames
 * always produce the same score rows, which makes this the fixture
 * classifier for integration tests of the decoding pipeline.
 */

import { CLASS_SYMBOLS, softmax } from "./classes.js";
import { GrayImage } from "./pgm.js";
import { drawToyImage } from "./toy.js";

/** Sharpness of the similarity-to-probability mapping. */
const TEMPERATURE = 25;

const templateCache = new Map<number, GrayImage[]>();

function templates(size: number): GrayImage[] {
  let cached = templateCache.get(size);
  if (!cached) {
    cached = CLASS_SYMBOLS.map((symbol) => drawToyImage(symbol, size, 0));
    templateCache.set(size, cached);
  }
  return cached;
}

function meanAbsDiff(a: Uint8Array, b: Uint8Array): number {
  let acc = 0;
  for (let i = 0; i < a.length; i++) {
    acc += Math.abs(a[i] - b[i]);
  }
  return acc / a.length / 255;
}

/** One softmax row per frame, in frame order. */
export function stubInfer(frames: GrayImage[]): number[][] {
  return frames.map((frame, i) => {
    if (frame.width !== frame.height) {
      throw new Error(`frame ${i} is not square (${frame.width}x${frame.height})`);
    }
    const refs = templates(frame.width);
    const logits = refs.map(
      (ref) => -TEMPERATURE * meanAbsDiff(frame.pixels, ref.pixels),
    );
    return softmax(logits);
  });
}
