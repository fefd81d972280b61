import { describe, expect, it } from "vitest";

import { CLASS_SYMBOLS } from "../src/classes.js";
import { decodePgm, encodePgm } from "../src/pgm.js";
import { stubInfer } from "../src/stub.js";
import { drawToyImage, makeRng } from "../src/toy.js";

describe("stub classifier", () => {
  it("is deterministic", () => {
    const rng = makeRng(9);
    const frames = [...Array(5)].map((_, i) =>
      drawToyImage(CLASS_SYMBOLS[i % 6], 48, 20, rng),
    );
    const a = stubInfer(frames);
    const b = stubInfer(frames);
    expect(a).toEqual(b);
  });

  it("scores a font-window frame highest at index 1", () => {
    const frame = drawToyImage("f", 48, 20, makeRng(4));
    const [row] = stubInfer([frame]);
    expect(row.indexOf(Math.max(...row))).toBe(1);
  });

  it("recovers the planned class for every symbol", () => {
    const rng = makeRng(17);
    CLASS_SYMBOLS.forEach((symbol, index) => {
      const [row] = stubInfer([drawToyImage(symbol, 48, 20, rng)]);
      expect(row.indexOf(Math.max(...row))).toBe(index);
    });
  });

  it("emits one row per frame", () => {
    const frames = [...Array(3)].map(() => drawToyImage("c", 32, 0));
    expect(stubInfer(frames)).toHaveLength(3);
  });

  it("emits simplex-valid rows", () => {
    const rng = makeRng(23);
    const frames = [...Array(8)].map((_, i) =>
      drawToyImage(CLASS_SYMBOLS[i % 6], 40, 40, rng),
    );
    for (const row of stubInfer(frames)) {
      expect(row).toHaveLength(6);
      const sum = row.reduce((a, b) => a + b, 0);
      expect(Math.abs(sum - 1)).toBeLessThan(1e-6);
      for (const v of row) {
        expect(v).toBeGreaterThanOrEqual(0);
        expect(v).toBeLessThanOrEqual(1);
      }
    }
  });
});

describe("pgm codec", () => {
  it("round-trips", () => {
    const image = drawToyImage("C", 32, 15, makeRng(3));
    const again = decodePgm(encodePgm(image));
    expect(again.width).toBe(32);
    expect(again.height).toBe(32);
    expect([...again.pixels]).toEqual([...image.pixels]);
  });

  it("rejects non-P5 data", () => {
    expect(() => decodePgm(Buffer.from("P2\n2 2\n255\n0 0 0 0"))).toThrow(/P5/);
  });

  it("rejects truncated pixel data", () => {
    expect(() => decodePgm(Buffer.from("P5\n4 4\n255\nxy"))).toThrow(/truncated/);
  });
});
