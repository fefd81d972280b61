/**
 * Turn a directory of frame images into a score file the decoding
 * pipeline consumes, using either the deterministic stub or a trained
 * checkpoint. Frames are ordered by filename.
 */

import { readdirSync } from "fs";
import { basename, join } from "path";

import { ScoreFile, buildScoreFile } from "./classes.js";
import { GrayImage, readPgmFile } from "./pgm.js";
import { Checkpoint, loadCheckpoint, modelInfer } from "./model.js";
import { stubInfer } from "./stub.js";

export function loadFramesDir(dir: string): GrayImage[] {
  const files = readdirSync(dir)
    .filter((f) => f.endsWith(".pgm"))
    .sort();
  if (files.length === 0) {
    throw new Error(`no .pgm frames in ${dir}`);
  }
  return files.map((f) => {
    try {
      return readPgmFile(join(dir, f));
    } catch (err) {
      throw new Error(`unreadable image ${f}: ${(err as Error).message}`);
    }
  });
}

export async function inferScores(
  framesDir: string,
  fps: number,
  model: "stub" | string,
  videoId?: string,
): Promise<ScoreFile> {
  const frames = loadFramesDir(framesDir);
  let rows: number[][];
  if (model === "stub") {
    rows = stubInfer(frames);
  } else {
    const checkpoint: Checkpoint = await loadCheckpoint(model);
    rows = modelInfer(checkpoint, frames);
  }
  return buildScoreFile(videoId ?? basename(framesDir), fps, rows);
}
