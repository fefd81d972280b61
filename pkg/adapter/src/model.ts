/**
 * Trainable frame classifier: a small CNN fine-tuned on labeled image
 * folders with SGD + momentum, L2 weight decay, and a learning rate
 * annealed by a constant factor every epoch. Training augments with
 * random crops; inference evaluates the center crop.
 */

import { mkdirSync, readFileSync, readdirSync, writeFileSync } from "fs";
import { join } from "path";

import * as tf from "@tensorflow/tfjs";

import { CLASS_SYMBOLS, N_CLASSES } from "./classes.js";
import { GrayImage, readPgmFile } from "./pgm.js";
import { makeRng } from "./toy.js";

export interface TrainConfig {
  epochs: number;
  batchSize: number;
  momentum: number;
  weightDecay: number;
  learningRate: number;
  lrAnnealFactor: number;
  imageSize: number;
  cropSize: number;
  seed: number;
}

export const DEFAULT_CONFIG: TrainConfig = {
  epochs: 3,
  batchSize: 128,
  momentum: 0.9,
  weightDecay: 0.0005,
  learningRate: 0.001,
  lrAnnealFactor: 0.1,
  imageSize: 256,
  cropSize: 227,
  seed: 1,
};

export interface IterationLog {
  epoch: number;
  iteration: number;
  loss: number;
}

export interface EpochLog {
  epoch: number;
  learningRate: number;
  meanLoss: number;
}

export interface TrainingLog {
  config: TrainConfig;
  classes: string[];
  exampleCount: number;
  iterations: IterationLog[];
  epochs: EpochLog[];
}

export interface LabeledDataset {
  images: GrayImage[];
  labels: number[]; // class indices aligned with images
}

export function loadLabeledDataset(dir: string): LabeledDataset {
  const images: GrayImage[] = [];
  const labels: number[] = [];
  CLASS_SYMBOLS.forEach((symbol, classIndex) => {
    let files: string[];
    try {
      files = readdirSync(join(dir, symbol)).filter((f) => f.endsWith(".pgm"));
    } catch {
      throw new Error(`dataset is missing a folder for class ${symbol}`);
    }
    if (files.length === 0) {
      throw new Error(`class ${symbol} has no images`);
    }
    for (const file of files.sort()) {
      images.push(readPgmFile(join(dir, symbol, file)));
      labels.push(classIndex);
    }
  });
  return { images, labels };
}

export function cropImage(
  image: GrayImage,
  size: number,
  offsetX: number,
  offsetY: number,
): Float32Array {
  if (size > image.width || size > image.height) {
    throw new Error(
      `crop ${size} exceeds image ${image.width}x${image.height}`,
    );
  }
  // zero-centered inputs, mirroring the mean-image subtraction the
  // full-scale pipeline applies
  const out = new Float32Array(size * size);
  for (let y = 0; y < size; y++) {
    for (let x = 0; x < size; x++) {
      out[y * size + x] =
        image.pixels[(y + offsetY) * image.width + (x + offsetX)] / 127.5 - 1.0;
    }
  }
  return out;
}

export function centerCrop(image: GrayImage, size: number): Float32Array {
  return cropImage(
    image,
    size,
    Math.floor((image.width - size) / 2),
    Math.floor((image.height - size) / 2),
  );
}

export function buildClassifier(cropSize: number, config: TrainConfig): tf.LayersModel {
  const l2 = tf.regularizers.l2({ l2: config.weightDecay });
  const init = (seed: number) => tf.initializers.glorotUniform({ seed });
  const model = tf.sequential();
  model.add(
    tf.layers.conv2d({
      inputShape: [cropSize, cropSize, 1],
      filters: 8,
      kernelSize: 3,
      activation: "relu",
      kernelInitializer: init(config.seed),
      kernelRegularizer: l2,
    }),
  );
  model.add(tf.layers.maxPooling2d({ poolSize: 2 }));
  model.add(
    tf.layers.conv2d({
      filters: 16,
      kernelSize: 3,
      activation: "relu",
      kernelInitializer: init(config.seed + 1),
      kernelRegularizer: l2,
    }),
  );
  model.add(tf.layers.maxPooling2d({ poolSize: 2 }));
  model.add(tf.layers.flatten());
  model.add(
    tf.layers.dense({
      units: 32,
      activation: "relu",
      kernelInitializer: init(config.seed + 2),
      kernelRegularizer: l2,
    }),
  );
  model.add(tf.layers.dropout({ rate: 0.5, seed: config.seed + 3 }));
  model.add(
    tf.layers.dense({
      units: N_CLASSES,
      activation: "softmax",
      kernelInitializer: init(config.seed + 4),
      kernelRegularizer: l2,
    }),
  );
  return model;
}

function epochTensors(
  dataset: LabeledDataset,
  config: TrainConfig,
  rng: () => number,
): { xs: tf.Tensor4D; ys: tf.Tensor2D } {
  const n = dataset.images.length;
  const crop = config.cropSize;
  const data = new Float32Array(n * crop * crop);
  // fresh random crops every epoch stand in for the usual translation
  // augmentation; shuffle order alongside
  const order = [...Array(n).keys()];
  for (let i = n - 1; i > 0; i--) {
    const j = Math.floor(rng() * (i + 1));
    [order[i], order[j]] = [order[j], order[i]];
  }
  const labels: number[] = [];
  order.forEach((src, row) => {
    const image = dataset.images[src];
    const maxOff = image.width - crop;
    const patch = cropImage(
      image,
      crop,
      Math.floor(rng() * (maxOff + 1)),
      Math.floor(rng() * (maxOff + 1)),
    );
    data.set(patch, row * crop * crop);
    labels.push(dataset.labels[src]);
  });
  const xs = tf.tensor4d(data, [n, crop, crop, 1]);
  const ys = tf.oneHot(tf.tensor1d(labels, "int32"), N_CLASSES) as tf.Tensor2D;
  return { xs, ys };
}

export async function finetune(
  dataset: LabeledDataset,
  config: Partial<TrainConfig> = {},
): Promise<{ model: tf.LayersModel; log: TrainingLog }> {
  const cfg: TrainConfig = { ...DEFAULT_CONFIG, ...config };
  if (cfg.epochs < 1 || cfg.batchSize < 1) {
    throw new Error("epochs and batchSize must be at least 1");
  }
  if (cfg.cropSize > cfg.imageSize) {
    throw new Error(`cropSize ${cfg.cropSize} exceeds imageSize ${cfg.imageSize}`);
  }
  for (const [i, image] of dataset.images.entries()) {
    if (image.width < cfg.cropSize || image.height < cfg.cropSize) {
      throw new Error(`image ${i} is smaller than the crop size`);
    }
  }

  const model = buildClassifier(cfg.cropSize, cfg);
  const optimizer = tf.train.momentum(cfg.learningRate, cfg.momentum);
  model.compile({ optimizer, loss: "categoricalCrossentropy" });

  const rng = makeRng(cfg.seed);
  const log: TrainingLog = {
    config: cfg,
    classes: [...CLASS_SYMBOLS],
    exampleCount: dataset.images.length,
    iterations: [],
    epochs: [],
  };
  let iteration = 0;
  for (let epoch = 1; epoch <= cfg.epochs; epoch++) {
    const lr = cfg.learningRate * cfg.lrAnnealFactor ** (epoch - 1);
    // the field is protected in the typings but mutable at runtime;
    // recreating the optimizer would discard momentum state
    (optimizer as unknown as { learningRate: number }).learningRate = lr;
    const { xs, ys } = epochTensors(dataset, cfg, rng);
    const epochLosses: number[] = [];
    await model.fit(xs, ys, {
      epochs: 1,
      batchSize: cfg.batchSize,
      shuffle: false,
      verbose: 0,
      callbacks: {
        onBatchEnd: async (_batch, batchLogs) => {
          const loss = Number(batchLogs?.loss);
          iteration += 1;
          epochLosses.push(loss);
          log.iterations.push({ epoch, iteration, loss });
        },
      },
    });
    xs.dispose();
    ys.dispose();
    log.epochs.push({
      epoch,
      learningRate: lr,
      meanLoss: epochLosses.reduce((a, b) => a + b, 0) / epochLosses.length,
    });
  }
  return { model, log };
}

export interface Checkpoint {
  model: tf.LayersModel;
  cropSize: number;
}

export async function saveCheckpoint(
  dir: string,
  model: tf.LayersModel,
  log: TrainingLog,
): Promise<void> {
  mkdirSync(dir, { recursive: true });
  let captured: tf.io.ModelArtifacts | null = null;
  await model.save(
    tf.io.withSaveHandler(async (artifacts) => {
      captured = artifacts;
      return {
        modelArtifactsInfo: {
          dateSaved: new Date(),
          modelTopologyType: "JSON",
        },
      };
    }),
  );
  const artifacts = captured as unknown as tf.io.ModelArtifacts;
  const weightData = artifacts.weightData as ArrayBuffer;
  writeFileSync(
    join(dir, "model.json"),
    JSON.stringify({
      modelTopology: artifacts.modelTopology,
      weightSpecs: artifacts.weightSpecs,
      format: artifacts.format,
    }),
  );
  writeFileSync(join(dir, "weights.bin"), Buffer.from(weightData));
  writeFileSync(join(dir, "training_log.json"), JSON.stringify(log, null, 2));
}

export async function loadCheckpoint(dir: string): Promise<Checkpoint> {
  const meta = JSON.parse(readFileSync(join(dir, "model.json"), "utf-8"));
  const weightData = readFileSync(join(dir, "weights.bin"));
  const model = await tf.loadLayersModel(
    tf.io.fromMemory({
      modelTopology: meta.modelTopology,
      weightSpecs: meta.weightSpecs,
      weightData: weightData.buffer.slice(
        weightData.byteOffset,
        weightData.byteOffset + weightData.byteLength,
      ),
    }),
  );
  const outputShape = model.outputs[0].shape;
  if (outputShape[outputShape.length - 1] !== N_CLASSES) {
    throw new Error(
      `model predicts ${outputShape[outputShape.length - 1]} classes, expected ${N_CLASSES}`,
    );
  }
  const inputShape = model.inputs[0].shape;
  return { model, cropSize: Number(inputShape[1]) };
}

/** Softmax rows for a batch of frames, center-cropped to the model input. */
export function modelInfer(
  checkpoint: Checkpoint,
  frames: GrayImage[],
): number[][] {
  const crop = checkpoint.cropSize;
  const data = new Float32Array(frames.length * crop * crop);
  frames.forEach((frame, i) => {
    data.set(centerCrop(frame, crop), i * crop * crop);
  });
  return tf.tidy(() => {
    const xs = tf.tensor4d(data, [frames.length, crop, crop, 1]);
    const out = checkpoint.model.predict(xs) as tf.Tensor2D;
    const rows = out.arraySync();
    return rows;
  });
}
