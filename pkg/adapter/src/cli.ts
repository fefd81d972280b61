/**
 * Adapter CLI: generate toy imagery, train the classifier, and emit
 * score files for the decoding pipeline.
 *
 *   gen-toy    --out DIR [--per-class N] [--size S] [--seed N] [--noise N]
 *   gen-frames --out DIR --plan bbffFF... [--size S] [--seed N]
 *   train      --data DIR --out DIR [--config FILE] [--epochs N] ...
 *   infer      --frames DIR --fps N [--model stub|CHECKPOINT] [--out FILE]
 */

import { readFileSync, writeFileSync } from "fs";
import { parseArgs } from "util";

import { finetune, loadLabeledDataset, saveCheckpoint } from "./model.js";
import { inferScores } from "./infer.js";
import { genFrameSequence, genToyDataset } from "./toy.js";

function usage(): never {
  console.error(
    "usage: cli.js <gen-toy|gen-frames|train|infer> [options]",
  );
  process.exit(1);
}

async function main(): Promise<number> {
  const [command, ...rest] = process.argv.slice(2);
  if (!command) usage();

  if (command === "gen-toy") {
    const { values } = parseArgs({
      args: rest,
      options: {
        out: { type: "string" },
        "per-class": { type: "string", default: "20" },
        size: { type: "string", default: "64" },
        seed: { type: "string", default: "1" },
        noise: { type: "string", default: "20" },
      },
    });
    if (!values.out) usage();
    genToyDataset(
      values.out,
      Number(values["per-class"]),
      Number(values.size),
      Number(values.seed),
      Number(values.noise),
    );
    console.log(JSON.stringify({ out: values.out, perClass: Number(values["per-class"]) }));
    return 0;
  }

  if (command === "gen-frames") {
    const { values } = parseArgs({
      args: rest,
      options: {
        out: { type: "string" },
        plan: { type: "string" },
        size: { type: "string", default: "64" },
        seed: { type: "string", default: "1" },
        noise: { type: "string", default: "20" },
      },
    });
    if (!values.out || !values.plan) usage();
    genFrameSequence(
      values.out,
      values.plan,
      Number(values.size),
      Number(values.seed),
      Number(values.noise),
    );
    console.log(JSON.stringify({ out: values.out, frames: values.plan.length }));
    return 0;
  }

  if (command === "train") {
    const { values } = parseArgs({
      args: rest,
      options: {
        data: { type: "string" },
        out: { type: "string" },
        config: { type: "string" },
        epochs: { type: "string" },
        "image-size": { type: "string" },
        "crop-size": { type: "string" },
        seed: { type: "string" },
      },
    });
    if (!values.data || !values.out) usage();
    const overrides = values.config
      ? JSON.parse(readFileSync(values.config, "utf-8"))
      : {};
    if (values.epochs) overrides.epochs = Number(values.epochs);
    if (values["image-size"]) overrides.imageSize = Number(values["image-size"]);
    if (values["crop-size"]) overrides.cropSize = Number(values["crop-size"]);
    if (values.seed) overrides.seed = Number(values.seed);
    const dataset = loadLabeledDataset(values.data);
    const { model, log } = await finetune(dataset, overrides);
    await saveCheckpoint(values.out, model, log);
    console.log(
      JSON.stringify({
        out: values.out,
        epochs: log.epochs.map((e) => ({ lr: e.learningRate, loss: e.meanLoss })),
      }),
    );
    return 0;
  }

  if (command === "infer") {
    const { values } = parseArgs({
      args: rest,
      options: {
        frames: { type: "string" },
        fps: { type: "string" },
        model: { type: "string", default: "stub" },
        out: { type: "string" },
        "video-id": { type: "string" },
      },
    });
    if (!values.frames || !values.fps) usage();
    const scoreFile = await inferScores(
      values.frames,
      Number(values.fps),
      values.model === "stub" ? "stub" : values.model!,
      values["video-id"],
    );
    const text = JSON.stringify(scoreFile);
    if (values.out) {
      writeFileSync(values.out, text);
    } else {
      console.log(text);
    }
    return 0;
  }

  usage();
}

main()
  .then((code) => process.exit(code))
  .catch((err) => {
    console.error(`error: ${err.message}`);
    process.exit(1);
  });
