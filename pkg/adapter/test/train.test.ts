/**
 * Fine-tuning behavior at toy scale: the annealed learning-rate
 * schedule, epoch-over-epoch loss decrease (deterministic under the
 * frozen seed), the logged hyperparameter defaults, and checkpoint
 * round-tripping into valid score rows.
 */

import { mkdtempSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";

import { beforeAll, describe, expect, it } from "vitest";

import { buildScoreFile } from "../src/classes.js";
import {
  TrainingLog,
  finetune,
  loadCheckpoint,
  loadLabeledDataset,
  modelInfer,
  saveCheckpoint,
} from "../src/model.js";
import { drawToyImage, genToyDataset, makeRng } from "../src/toy.js";

const SEED = 11;

let log: TrainingLog;
let checkpointDir: string;

beforeAll(async () => {
  const dir = mkdtempSync(join(tmpdir(), "adapter-train-"));
  const dataDir = join(dir, "toy");
  genToyDataset(dataDir, 214, 14, SEED, 20);
  const dataset = loadLabeledDataset(dataDir);
  const result = await finetune(dataset, {
    imageSize: 14,
    cropSize: 12,
    seed: SEED,
  });
  log = result.log;
  checkpointDir = join(dir, "checkpoint");
  await saveCheckpoint(checkpointDir, result.model, log);
}, 180_000);

describe("fine-tuning at toy scale", () => {
  it("anneals the learning rate 0.001 / 0.0001 / 0.00001", () => {
    const lrs = log.epochs.map((e) => e.learningRate);
    expect(lrs).toHaveLength(3);
    expect(lrs[0]).toBeCloseTo(0.001, 10);
    expect(lrs[1]).toBeCloseTo(0.0001, 10);
    expect(lrs[2]).toBeCloseTo(0.00001, 10);
  });

  it("training loss decreases epoch over epoch", () => {
    const losses = log.epochs.map((e) => e.meanLoss);
    expect(losses[1]).toBeLessThan(losses[0]);
    expect(losses[2]).toBeLessThan(losses[1]);
  });

  it("logs the contract hyperparameters", () => {
    expect(log.config.batchSize).toBe(128);
    expect(log.config.momentum).toBeCloseTo(0.9, 12);
    expect(log.config.weightDecay).toBeCloseTo(0.0005, 12);
    expect(log.config.epochs).toBe(3);
  });

  it("records a loss for every iteration", () => {
    // 1284 examples / 128 per batch = 11 iterations per epoch
    expect(log.iterations).toHaveLength(33);
    for (const entry of log.iterations) {
      expect(Number.isFinite(entry.loss)).toBe(true);
    }
    expect(log.iterations.map((e) => e.iteration)).toEqual(
      [...Array(33)].map((_, i) => i + 1),
    );
  });

  it("checkpoint reloads and emits simplex rows", async () => {
    const checkpoint = await loadCheckpoint(checkpointDir);
    expect(checkpoint.cropSize).toBe(12);
    const rng = makeRng(5);
    const frames = [...Array(3)].map(() => drawToyImage("p", 14, 20, rng));
    const rows = modelInfer(checkpoint, frames);
    expect(rows).toHaveLength(3);
    // buildScoreFile re-validates the simplex constraint
    const file = buildScoreFile("model-clip", 2, rows);
    expect(file.classes).toEqual(["b", "f", "F", "c", "C", "p"]);
  });
});
