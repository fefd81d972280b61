/**
 * Synthetic UI-like toy imagery.
 *
 * Each class gets a distinct geometric screen element (window frames,
 * dropdown strips, a page-number box) drawn over a light desktop
 * background, with optional pixel noise. The clean renderings double
 * as the matching templates for the deterministic stub classifier.
 */

import { mkdirSync, writeFileSync } from "fs";
import { join } from "path";

import { CLASS_SYMBOLS, ClassSymbol } from "./classes.js";
import { GrayImage, encodePgm } from "./pgm.js";

/** Small deterministic PRNG (mulberry32), enough for pixel noise. */
export function makeRng(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function blank(size: number, value: number): Uint8Array {
  return new Uint8Array(size * size).fill(value);
}

function rect(
  px: Uint8Array,
  size: number,
  x0: number,
  y0: number,
  x1: number,
  y1: number,
  value: number,
  fill: boolean,
): void {
  for (let y = y0; y < y1; y++) {
    for (let x = x0; x < x1; x++) {
      const edge = y === y0 || y === y1 - 1 || x === x0 || x === x1 - 1;
      if (fill || edge) px[y * size + x] = value;
    }
  }
}

export function drawToyImage(
  symbol: ClassSymbol,
  size: number,
  noise = 0,
  rng: () => number = () => 0.5,
): GrayImage {
  const s = (f: number) => Math.round(f * size);
  const px = blank(size, 200);
  // a menu bar exists on every "screen"
  rect(px, size, 0, 0, size, s(0.08), 120, true);
  switch (symbol) {
    case "b":
      break;
    case "f": // font window: framed dialog upper-left
      rect(px, size, s(0.08), s(0.15), s(0.55), s(0.6), 40, false);
      rect(px, size, s(0.12), s(0.2), s(0.5), s(0.27), 90, true);
      break;
    case "F": // default-font window: centered dialog with inner bar
      rect(px, size, s(0.25), s(0.25), s(0.8), s(0.8), 40, false);
      rect(px, size, s(0.3), s(0.55), s(0.75), s(0.65), 70, true);
      break;
    case "c": // column dropdown: narrow strip below the menu bar
      rect(px, size, s(0.65), s(0.08), s(0.85), s(0.5), 60, true);
      break;
    case "C": // column window: large box with two column bars
      rect(px, size, s(0.15), s(0.2), s(0.85), s(0.85), 40, false);
      rect(px, size, s(0.28), s(0.3), s(0.4), s(0.75), 100, true);
      rect(px, size, s(0.55), s(0.3), s(0.67), s(0.75), 100, true);
      break;
    case "p": // page-number dropdown: small box bottom-center
      rect(px, size, s(0.35), s(0.7), s(0.65), s(0.92), 60, true);
      break;
  }
  if (noise > 0) {
    for (let i = 0; i < px.length; i++) {
      const v = px[i] + Math.round((rng() - 0.5) * 2 * noise);
      px[i] = v < 0 ? 0 : v > 255 ? 255 : v;
    }
  }
  return { width: size, height: size, pixels: px };
}

/** Write labeled class folders: <dir>/<symbol>/img_###.pgm */
export function genToyDataset(
  dir: string,
  perClass: number,
  size: number,
  seed: number,
  noise = 20,
): void {
  const rng = makeRng(seed);
  for (const symbol of CLASS_SYMBOLS) {
    const classDir = join(dir, symbol);
    mkdirSync(classDir, { recursive: true });
    for (let i = 0; i < perClass; i++) {
      const image = drawToyImage(symbol, size, noise, rng);
      writeFileSync(
        join(classDir, `img_${String(i).padStart(3, "0")}.pgm`),
        encodePgm(image),
      );
    }
  }
}

/** Write a frame sequence: <dir>/frame_####.pgm following `plan`. */
export function genFrameSequence(
  dir: string,
  plan: string,
  size: number,
  seed: number,
  noise = 20,
): void {
  const rng = makeRng(seed);
  mkdirSync(dir, { recursive: true });
  [...plan].forEach((ch, i) => {
    if (!(CLASS_SYMBOLS as readonly string[]).includes(ch)) {
      throw new Error(`unknown class symbol ${ch} at frame ${i}`);
    }
    const image = drawToyImage(ch as ClassSymbol, size, noise, rng);
    writeFileSync(
      join(dir, `frame_${String(i).padStart(4, "0")}.pgm`),
      encodePgm(image),
    );
  });
}
