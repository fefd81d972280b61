/**
 * The six UI-state classes and the score-file wire format.
 *
 * The class ordering is the pipeline contract: score rows are indexed
 * (b, f, F, c, C, p) and the file carries the ordering explicitly so
 * the consumer can reject a column swap.
 */

export const CLASS_SYMBOLS = ["b", "f", "F", "c", "C", "p"] as const;
export type ClassSymbol = (typeof CLASS_SYMBOLS)[number];
export const N_CLASSES = CLASS_SYMBOLS.length;

export interface ScoreFile {
  video_id: string;
  fps: number;
  classes: string[];
  scores: number[][];
}

export function buildScoreFile(
  videoId: string,
  fps: number,
  rows: number[][],
): ScoreFile {
  if (!(fps > 0)) {
    throw new Error(`fps must be positive, got ${fps}`);
  }
  rows.forEach((row, i) => {
    if (row.length !== N_CLASSES) {
      throw new Error(`row ${i} has ${row.length} entries, expected ${N_CLASSES}`);
    }
    const sum = row.reduce((a, b) => a + b, 0);
    if (!Number.isFinite(sum) || Math.abs(sum - 1) > 1e-6) {
      throw new Error(`row ${i} sums to ${sum}`);
    }
  });
  return {
    video_id: videoId,
    fps,
    classes: [...CLASS_SYMBOLS],
    scores: rows,
  };
}

export function softmax(logits: number[]): number[] {
  const top = Math.max(...logits);
  const exps = logits.map((v) => Math.exp(v - top));
  const total = exps.reduce((a, b) => a + b, 0);
  return exps.map((v) => v / total);
}
